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

#include "lspalign/lexical_aligner.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "lspalign/error.h"
#include "lspalign/parallel.h"

namespace lspalign {

namespace {

// Sentences per E-step work item.
constexpr std::size_t kBlockSize = 256;
// Work items per merge wave.
constexpr std::size_t kBlocksPerWave = 64;

double diagonal_distance(std::size_t i, std::size_t j, std::size_t m, std::size_t n) {
  return std::abs(static_cast<double>(i) / static_cast<double>(m) -
                  static_cast<double>(j) / static_cast<double>(n));
}

// prior[0] is NULL, prior[i] for i = 1..m. j is 1-based.
void fill_prior(std::size_t j, std::size_t m, std::size_t n, double tension, double null_prob,
                std::vector<double>& prior) {
  prior.resize(m + 1);
  prior[0] = null_prob;
  double z = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    prior[i] = std::exp(-tension * diagonal_distance(i, j, m, n));
    z += prior[i];
  }
  const double scale = (1.0 - null_prob) / z;
  for (std::size_t i = 1; i <= m; ++i) prior[i] *= scale;
}

struct Contribution {
  std::size_t slot;
  double value;
};

struct BlockResult {
  std::vector<Contribution> contributions;
  std::vector<double> log_likelihoods;
};

// Expected link counts for one sentence, appended in (j, i) order.
double e_step_sentence(std::span<const WordId> src, std::span<const WordId> tgt,
                       const TranslationTable& table, double tension, double null_prob,
                       std::vector<Contribution>* out, std::vector<double>& prior,
                       std::vector<std::size_t>& slots, std::vector<double>& joint) {
  const std::size_t m = src.size();
  const std::size_t n = tgt.size();
  const auto entries = table.entries();
  double ll = 0.0;
  slots.resize(m + 1);
  joint.resize(m + 1);
  for (std::size_t j = 1; j <= n; ++j) {
    fill_prior(j, m, n, tension, null_prob, prior);
    const WordId t = tgt[j - 1];
    double z = 0.0;
    for (std::size_t i = 0; i <= m; ++i) {
      const WordId s = i == 0 ? kNullWord : src[i - 1];
      slots[i] = table.find(s, t);
      const double theta = slots[i] == std::string::npos ? 0.0 : entries[slots[i]].prob;
      joint[i] = prior[i] * theta;
      z += joint[i];
    }
    if (z <= 0.0) continue;
    ll += std::log(z);
    if (out == nullptr) continue;
    for (std::size_t i = 0; i <= m; ++i) {
      if (joint[i] > 0.0) out->push_back({slots[i], joint[i] / z});
    }
  }
  return ll;
}

TranslationTable initial_table(const IdCorpus& corpus) {
  std::vector<std::vector<WordId>> rows(corpus.source.size());
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto src = corpus.source_sentence(k);
    const auto tgt = corpus.target_sentence(k);
    for (WordId t : tgt) rows[kNullWord].push_back(t);
    for (WordId s : src) {
      auto& row = rows[s];
      row.insert(row.end(), tgt.begin(), tgt.end());
      // Keep rows of frequent words from growing without bound.
      if (row.size() > 4096) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
      }
    }
    if (rows[kNullWord].size() > 4096) {
      auto& row = rows[kNullWord];
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
  }
  std::vector<std::size_t> offsets(1, 0);
  std::vector<TranslationTable::Entry> entries;
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    const double uniform = row.empty() ? 0.0 : 1.0 / static_cast<double>(row.size());
    for (WordId t : row) entries.push_back({t, uniform});
    offsets.push_back(entries.size());
    std::vector<WordId>().swap(row);
  }
  return TranslationTable(Mechanism::kLexical, corpus.source, corpus.target, std::move(offsets),
                          std::move(entries));
}

}  // namespace

void TrainConfig::validate() const {
  if (iterations < 1) throw Error(Errc::kConfig, "iterations must be positive");
  if (!(tension >= 0.0)) throw Error(Errc::kConfig, "tension (lambda) must be >= 0");
  if (!(null_prob >= 0.0 && null_prob < 1.0)) {
    throw Error(Errc::kConfig, "null probability (p0) must be in [0, 1)");
  }
  if (shards < 1) throw Error(Errc::kConfig, "shards must be positive");
}

double alignment_prior(std::size_t i, std::size_t j, std::size_t m, std::size_t n,
                       double tension, double null_prob) {
  if (m == 0 || n == 0 || j < 1 || j > n || i > m) {
    throw Error(Errc::kIndexOutOfRange, "prior index (i=" + std::to_string(i) +
                                            ", j=" + std::to_string(j) + ") outside m=" +
                                            std::to_string(m) + ", n=" + std::to_string(n));
  }
  if (i == 0) return null_prob;
  std::vector<double> prior;
  fill_prior(j, m, n, tension, null_prob, prior);
  return prior[i];
}

void IdCorpus::add(std::span<const std::string> source_tokens,
                   std::span<const std::string> target_tokens) {
  for (const auto& w : source_tokens) source_ids.push_back(source.intern(w));
  for (const auto& w : target_tokens) target_ids.push_back(target.intern(w));
  source_offsets.push_back(source_ids.size());
  target_offsets.push_back(target_ids.size());
}

std::span<const WordId> IdCorpus::source_sentence(std::size_t k) const {
  return std::span<const WordId>(source_ids)
      .subspan(source_offsets[k], source_offsets[k + 1] - source_offsets[k]);
}

std::span<const WordId> IdCorpus::target_sentence(std::size_t k) const {
  return std::span<const WordId>(target_ids)
      .subspan(target_offsets[k], target_offsets[k + 1] - target_offsets[k]);
}

IdCorpus make_id_corpus(std::span<const Bitext> corpus, Direction direction) {
  IdCorpus ids;
  for (const Bitext& b : corpus) {
    if (direction == Direction::kForward) {
      ids.add(b.source, b.target);
    } else {
      ids.add(b.target, b.source);
    }
  }
  return ids;
}

LexicalModel em_train(const IdCorpus& corpus, const TrainConfig& config,
                      std::vector<double>* log_likelihoods) {
  config.validate();
  if (corpus.size() == 0) throw Error(Errc::kEmptyCorpus, "cannot train on an empty corpus");

  LexicalModel model{initial_table(corpus), config.tension, config.null_prob};
  TranslationTable& table = model.translation;
  std::vector<double> counts(table.num_entries());
  const std::size_t num_blocks = (corpus.size() + kBlockSize - 1) / kBlockSize;

  for (int iter = 0; iter < config.iterations; ++iter) {
    std::fill(counts.begin(), counts.end(), 0.0);
    double ll = 0.0;
    std::vector<BlockResult> wave;
    for (std::size_t first = 0; first < num_blocks; first += kBlocksPerWave) {
      const std::size_t wave_size = std::min(kBlocksPerWave, num_blocks - first);
      wave.assign(wave_size, {});
      parallel_for(wave_size, config.shards, [&](std::size_t w) {
        std::vector<double> prior;
        std::vector<std::size_t> slots;
        std::vector<double> joint;
        BlockResult& result = wave[w];
        const std::size_t begin = (first + w) * kBlockSize;
        const std::size_t end = std::min(begin + kBlockSize, corpus.size());
        for (std::size_t k = begin; k < end; ++k) {
          result.log_likelihoods.push_back(
              e_step_sentence(corpus.source_sentence(k), corpus.target_sentence(k), table,
                              model.tension, model.null_prob, &result.contributions, prior,
                              slots, joint));
        }
      });
      // Merging in corpus order makes every sum identical to a serial run.
      for (const BlockResult& result : wave) {
        for (const Contribution& c : result.contributions) counts[c.slot] += c.value;
        for (double v : result.log_likelihoods) ll += v;
      }
    }
    if (log_likelihoods) log_likelihoods->push_back(ll);
    spdlog::debug("em iteration {}: log-likelihood {}", iter + 1, ll);

    auto entries = table.mutable_entries();
    for (WordId s = 0; s < table.num_rows(); ++s) {
      double total = 0.0;
      for (std::size_t k = table.row_begin(s); k < table.row_end(s); ++k) total += counts[k];
      for (std::size_t k = table.row_begin(s); k < table.row_end(s); ++k) {
        entries[k].prob = total > 0.0 ? counts[k] / total : 0.0;
      }
    }
  }
  table.prune_zeros();
  return model;
}

LexicalModel em_train(std::span<const Bitext> corpus, const TrainConfig& config,
                      std::vector<double>* log_likelihoods) {
  return em_train(make_id_corpus(corpus, Direction::kForward), config, log_likelihoods);
}

double corpus_log_likelihood(const IdCorpus& corpus, const LexicalModel& model) {
  // Re-map ids: the model vocabulary may differ from the corpus vocabulary.
  std::vector<WordId> src_map(corpus.source.size());
  std::vector<WordId> tgt_map(corpus.target.size());
  for (WordId s = 0; s < src_map.size(); ++s) {
    src_map[s] = model.translation.source_vocab().find(corpus.source.word(s));
  }
  for (WordId t = 0; t < tgt_map.size(); ++t) {
    tgt_map[t] = model.translation.target_vocab().find(corpus.target.word(t));
  }
  std::vector<double> prior;
  double ll = 0.0;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto src = corpus.source_sentence(k);
    const auto tgt = corpus.target_sentence(k);
    const std::size_t m = src.size();
    const std::size_t n = tgt.size();
    for (std::size_t j = 1; j <= n; ++j) {
      fill_prior(j, m, n, model.tension, model.null_prob, prior);
      const WordId t = tgt_map[tgt[j - 1]];
      double z = prior[0] * model.translation.prob(kNullWord, t);
      for (std::size_t i = 1; i <= m; ++i) {
        z += prior[i] * model.translation.prob(src_map[src[i - 1]], t);
      }
      ll += std::log(z);
    }
  }
  return ll;
}

Alignment viterbi_align(const Bitext& b, const LexicalModel& model, Direction direction) {
  const auto& src_tokens = direction == Direction::kForward ? b.source : b.target;
  const auto& tgt_tokens = direction == Direction::kForward ? b.target : b.source;
  const TranslationTable& table = model.translation;
  const std::size_t m = src_tokens.size();
  const std::size_t n = tgt_tokens.size();
  std::vector<WordId> src(m);
  for (std::size_t i = 0; i < m; ++i) src[i] = table.source_vocab().find(src_tokens[i]);

  Alignment links;
  std::vector<double> prior;
  for (std::size_t j = 1; j <= n; ++j) {
    fill_prior(j, m, n, model.tension, model.null_prob, prior);
    const WordId t = table.target_vocab().find(tgt_tokens[j - 1]);
    std::size_t best = 0;
    double best_score = prior[0] * table.prob(kNullWord, t);
    double best_diag = diagonal_distance(0, j, m, n);
    for (std::size_t i = 1; i <= m; ++i) {
      const double score = prior[i] * table.prob(src[i - 1], t);
      const double diag = diagonal_distance(i, j, m, n);
      if (score > best_score || (score == best_score && diag < best_diag)) {
        best = i;
        best_score = score;
        best_diag = diag;
      }
    }
    if (best == 0 || best_score <= 0.0) continue;
    const auto i = static_cast<uint32_t>(best - 1);
    const auto jj = static_cast<uint32_t>(j - 1);
    links.push_back(direction == Direction::kForward ? Link{i, jj} : Link{jj, i});
  }
  normalize(links);
  return links;
}

Alignment gdfa_symmetrize(const Alignment& forward, const Alignment& reverse, std::size_t m,
                          std::size_t n) {
  for (const Alignment* a : {&forward, &reverse}) {
    for (const Link& l : *a) {
      if (l.source >= m || l.target >= n) {
        throw Error(Errc::kLinkOutOfRange,
                    "link " + std::to_string(l.source) + "-" + std::to_string(l.target) +
                        " outside " + std::to_string(m) + "x" + std::to_string(n));
      }
    }
  }
  std::vector<char> in_forward(m * n, 0);
  std::vector<char> in_reverse(m * n, 0);
  std::vector<char> current(m * n, 0);
  for (const Link& l : forward) in_forward[l.source * n + l.target] = 1;
  for (const Link& l : reverse) in_reverse[l.source * n + l.target] = 1;
  std::vector<char> source_covered(m, 0);
  std::vector<char> target_covered(n, 0);
  auto add = [&](std::size_t i, std::size_t j) {
    current[i * n + j] = 1;
    source_covered[i] = 1;
    target_covered[j] = 1;
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (in_forward[i * n + j] && in_reverse[i * n + j]) add(i, j);
    }
  }

  static constexpr int kNeighbors[8][2] = {{-1, 0}, {0, -1}, {1, 0},  {0, 1},
                                           {-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  bool added = true;
  while (added) {
    added = false;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        if (!current[i * n + j]) continue;
        for (const auto& d : kNeighbors) {
          const auto ni = static_cast<std::ptrdiff_t>(i) + d[0];
          const auto nj = static_cast<std::ptrdiff_t>(j) + d[1];
          if (ni < 0 || nj < 0 || ni >= static_cast<std::ptrdiff_t>(m) ||
              nj >= static_cast<std::ptrdiff_t>(n)) {
            continue;
          }
          const auto ui = static_cast<std::size_t>(ni);
          const auto uj = static_cast<std::size_t>(nj);
          const std::size_t cell = ui * n + uj;
          if (current[cell] || !(in_forward[cell] || in_reverse[cell])) continue;
          if (!source_covered[ui] || !target_covered[uj]) {
            add(ui, uj);
            added = true;
          }
        }
      }
    }
  }

  for (const Alignment* a : {&forward, &reverse}) {
    for (const Link& l : *a) {
      if (!source_covered[l.source] && !target_covered[l.target]) add(l.source, l.target);
    }
  }

  Alignment out;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (current[i * n + j]) out.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(j)});
    }
  }
  return out;
}

void save_lexical_model(std::ostream& out, const LexicalModel& model) {
  char tension[32];
  char null_prob[32];
  std::snprintf(tension, sizeof(tension), "%.17g", model.tension);
  std::snprintf(null_prob, sizeof(null_prob), "%.17g", model.null_prob);
  model.translation.dump(out, {{"tension", tension}, {"null_prob", null_prob}});
}

LexicalModel load_lexical_model(std::istream& in) {
  std::map<std::string, std::string> header;
  TranslationTable table = TranslationTable::load(in, &header);
  if (table.mechanism() != Mechanism::kLexical) {
    throw Error(Errc::kMalformedRecord, "lexical model dump holds a non-lexical table");
  }
  auto it_t = header.find("tension");
  auto it_p = header.find("null_prob");
  if (it_t == header.end() || it_p == header.end()) {
    throw Error(Errc::kMalformedRecord, "lexical model dump lacks #tension / #null_prob");
  }
  return LexicalModel{std::move(table), std::stod(it_t->second), std::stod(it_p->second)};
}

}  // namespace lspalign
