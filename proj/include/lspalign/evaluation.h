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

#ifndef LSPALIGN_EVALUATION_H_
#define LSPALIGN_EVALUATION_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "lspalign/corpus_io.h"

namespace lspalign {

// Length of the longest common subsequence over Unicode scalar values.
std::size_t lcs_length(std::u32string_view a, std::u32string_view b);
std::size_t lcs_length(std::string_view a, std::string_view b);

struct FuzzyScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// precision = |LCS| / |predicted|, recall = |LCS| / |gold|. Throws kEmptyString.
FuzzyScore fuzzy_f1(std::string_view predicted, std::string_view gold);

enum class FrequencyBucket { kLow = 0, kMid = 1, kHigh = 2 };

// low = 0-3, mid = 4-10, high = 11+.
FrequencyBucket frequency_bucket(std::size_t frequency);
std::string_view bucket_name(FrequencyBucket b);

struct EvalOptions {
  // Match a mined source against the closest gold source (fuzzy F1 at least
  // source_join_threshold) when there is no exact entry.
  bool fuzzy_source_join = false;
  double source_join_threshold = 0.8;
  bool casefold = false;
};

struct BucketStats {
  std::size_t matched = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Metrics are means over matched mined pairs. `harmonic_f1` is 2PR/(P+R) of
// the mean precision and recall, reported next to the mean F1.
struct EvaluationReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double harmonic_f1 = 0.0;
  std::array<BucketStats, 3> buckets{};
  std::size_t matched = 0;
  std::size_t unmatched = 0;

  std::string to_json() const;
  std::string to_table() const;
};

using FrequencyMap = std::unordered_map<std::string, std::size_t>;

EvaluationReport evaluate_lexicon(std::span<const EntityPair> mined, const GoldLexicon& gold,
                                  const FrequencyMap& frequency, const EvalOptions& options = {});

}  // namespace lspalign

#endif  // LSPALIGN_EVALUATION_H_
