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

#ifndef LSPALIGN_LEXICAL_ALIGNER_H_
#define LSPALIGN_LEXICAL_ALIGNER_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "lspalign/corpus_io.h"
#include "lspalign/translation_table.h"
#include "lspalign/vocabulary.h"

namespace lspalign {

// Diagonal-biased IBM Model 2: P(a_j = i) decays with the distance of i/m from
// j/n, and NULL takes a fixed share of the mass.
struct LexicalModel {
  TranslationTable translation;
  double tension = 4.0;
  double null_prob = 0.08;
};

struct TrainConfig {
  int iterations = 5;
  double tension = 4.0;
  double null_prob = 0.08;
  // Worker count for the E-step. Results do not depend on it.
  int shards = 1;

  void validate() const;
};

enum class Direction { kForward, kReverse };

// Prior over source positions for target position j (1-based). i = 0 is NULL,
// real source positions are 1..m. Throws kIndexOutOfRange.
double alignment_prior(std::size_t i, std::size_t j, std::size_t m, std::size_t n,
                       double tension, double null_prob);

// Token ids for a whole corpus; built once and reused across EM iterations.
struct IdCorpus {
  Vocabulary source{/*with_null=*/true};
  Vocabulary target;
  std::vector<WordId> source_ids;
  std::vector<WordId> target_ids;
  // Sentence k spans [source_offsets[k], source_offsets[k+1]).
  std::vector<std::size_t> source_offsets{0};
  std::vector<std::size_t> target_offsets{0};

  void add(std::span<const std::string> source_tokens, std::span<const std::string> target_tokens);
  std::size_t size() const { return source_offsets.size() - 1; }
  std::span<const WordId> source_sentence(std::size_t k) const;
  std::span<const WordId> target_sentence(std::size_t k) const;
};

IdCorpus make_id_corpus(std::span<const Bitext> corpus, Direction direction);

// Runs config.iterations rounds of EM. When `log_likelihoods` is given it
// receives the corpus log-likelihood measured in each E-step, i.e. under the
// parameters before that iteration's update.
LexicalModel em_train(const IdCorpus& corpus, const TrainConfig& config,
                      std::vector<double>* log_likelihoods = nullptr);
LexicalModel em_train(std::span<const Bitext> corpus, const TrainConfig& config,
                      std::vector<double>* log_likelihoods = nullptr);

// Sum over sentences and target positions of log sum_i prior(i,j) theta(s_i,t_j).
double corpus_log_likelihood(const IdCorpus& corpus, const LexicalModel& model);

// Per-target argmax of prior * theta. A model trained on swapped bitexts is
// decoded with Direction::kReverse; links come back in (source, target) order.
Alignment viterbi_align(const Bitext& b, const LexicalModel& model, Direction direction);

// Grow-diag-final-and. `reverse` must already be in (source, target)
// coordinates. Throws kLinkOutOfRange.
Alignment gdfa_symmetrize(const Alignment& forward, const Alignment& reverse, std::size_t m,
                          std::size_t n);

void save_lexical_model(std::ostream& out, const LexicalModel& model);
LexicalModel load_lexical_model(std::istream& in);

}  // namespace lspalign

#endif  // LSPALIGN_LEXICAL_ALIGNER_H_
