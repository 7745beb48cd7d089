// Copyright 2026 The lsp-align Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LSPALIGN_DISTANCE_ALIGN_H_
#define LSPALIGN_DISTANCE_ALIGN_H_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "lspalign/corpus_io.h"

namespace lspalign {

// Distance between a source and a target word; lower is more alignable. Must
// be total, deterministic and safe to call concurrently.
using WordDistanceFn = std::function<double(std::string_view, std::string_view)>;

// 1 - cos(v_s, v_t), in [0, 2]. Lookup tries the exact token, then its case
// fold. Out-of-vocabulary or zero-norm vectors give 1.0.
double semantic_distance(std::string_view source_word, std::string_view target_word,
                         const EmbeddingTable& embeddings);

// Edit distance over Unicode scalar values.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein(std::string_view a, std::string_view b);

std::u32string transliterate(std::u32string_view word, const TransliterationTable& table);
std::string transliterate(std::string_view word, const TransliterationTable& table);

// Minimum of the three length-normalized edit distances between the words,
// with either side transliterated into the other's script or neither. Words
// are case-folded first. Result in [0, 1].
double phonetic_distance(std::string_view source_word, std::string_view target_word,
                         const TransliterationTable& source_to_target,
                         const TransliterationTable& target_to_source);

WordDistanceFn make_semantic_distance(const EmbeddingTable& embeddings);
WordDistanceFn make_phonetic_distance(const TransliterationTable& source_to_target,
                                      const TransliterationTable& target_to_source);

// Greedy distance alignment over an m x n matrix of position distances. Pairs
// are visited by ascending (distance, source, target). A pair is linked when
// both positions are free; while slack |m - n| remains, a pair whose
// shorter-side position is covered and longer-side position is free is linked
// too. Every position of the longer side ends with exactly one link, every
// position of the shorter side with at least one.
Alignment greedy_align(std::size_t m, std::size_t n,
                       const std::function<double(std::size_t, std::size_t)>& distance);

Alignment greedy_align(const Bitext& b, const WordDistanceFn& distance);

}  // namespace lspalign

#endif  // LSPALIGN_DISTANCE_ALIGN_H_
