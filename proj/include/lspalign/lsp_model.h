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

#ifndef LSPALIGN_LSP_MODEL_H_
#define LSPALIGN_LSP_MODEL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lspalign/corpus_io.h"
#include "lspalign/translation_table.h"

namespace lspalign {

// Maximum-likelihood theta(s,t) = cnt(s,t) / sum_t' cnt(s,t') from aligned
// links. Target positions without a link are counted against NULL. Throws
// kLengthMismatch or kLinkOutOfRange.
TranslationTable estimate_table(std::span<const Bitext> corpus,
                                std::span<const Alignment> alignments, Mechanism k);

// Adds one sentence's link counts to `counts` (the streaming form of
// estimate_table).
void accumulate_counts(const Bitext& b, const Alignment& a, CountTable& counts);

// Mixture of the three per-mechanism tables with a uniform mechanism prior.
class LspModel {
 public:
  // Tables may be given in any order but must cover each mechanism once.
  // `smoothing` adds epsilon to every theta before renormalizing over the
  // table's target vocabulary; 0 keeps the plain estimates.
  LspModel(std::vector<TranslationTable> tables, double smoothing = 0.0);

  const TranslationTable& table(Mechanism k) const {
    return tables_[static_cast<std::size_t>(k)];
  }
  double smoothing() const { return smoothing_; }

  // theta_k(s, t), smoothed when configured. Ids are in table k's vocabulary.
  double theta(Mechanism k, WordId s, WordId t) const;

 private:
  std::vector<TranslationTable> tables_;
  double smoothing_;
};

inline constexpr double kMechanismPrior = 1.0 / 3.0;

struct ScoredAlignment {
  Alignment links;
  // Normalized posterior of the chosen source position, per target position;
  // 0 for unlinked positions.
  std::vector<double> confidence;
};

// Per-target mixture posterior over source positions 0 (NULL) .. m. Ties go
// to the position nearer the diagonal, then the lower index. A NULL argmax or
// an all-zero column leaves the target position unlinked.
ScoredAlignment posterior_align_scored(const Bitext& b, const LspModel& model);
Alignment posterior_align(const Bitext& b, const LspModel& model);

// Unnormalized mixture scores for target position j (0-based): entry 0 is
// NULL, entry i the source position i - 1.
std::vector<double> posterior_scores(const Bitext& b, const LspModel& model, std::size_t j);

// Draws a target sentence of `length` tokens from the generative model: for
// each position an alignment (uniform over NULL and the source positions), a
// mechanism (uniform), and a word from that mechanism's row. An empty row
// yields the source token itself. `mechanisms`, when given, receives the
// drawn mechanism per position.
std::vector<std::string> sample_translation(std::span<const std::string> source,
                                            const LspModel& model, std::size_t length,
                                            uint64_t seed,
                                            std::vector<Mechanism>* mechanisms = nullptr);

}  // namespace lspalign

#endif  // LSPALIGN_LSP_MODEL_H_
