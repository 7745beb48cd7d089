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

#include "lspalign/lsp_model.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "lspalign/error.h"

namespace lspalign {

namespace {

double diagonal_distance(std::size_t i, std::size_t j, std::size_t m, std::size_t n) {
  return std::abs(static_cast<double>(i) / static_cast<double>(m) -
                  static_cast<double>(j) / static_cast<double>(n));
}

void check_links(const Bitext& b, const Alignment& a) {
  for (const Link& l : a) {
    if (l.source >= b.source.size() || l.target >= b.target.size()) {
      throw Error(Errc::kLinkOutOfRange,
                  "link " + std::to_string(l.source) + "-" + std::to_string(l.target) +
                      " outside sentence " + std::to_string(b.id) + " (" +
                      std::to_string(b.source.size()) + "x" + std::to_string(b.target.size()) +
                      ")");
    }
  }
}

// Sentence tokens mapped into each table's vocabularies.
struct SentenceIds {
  // [k][i]: i = 0 is NULL, i = 1..m the source positions.
  std::array<std::vector<WordId>, 3> source;
  std::array<std::vector<WordId>, 3> target;
};

SentenceIds map_sentence(const Bitext& b, const LspModel& model) {
  SentenceIds ids;
  for (Mechanism k : kAllMechanisms) {
    const auto idx = static_cast<std::size_t>(k);
    const TranslationTable& table = model.table(k);
    auto& src = ids.source[idx];
    src.reserve(b.source.size() + 1);
    src.push_back(kNullWord);
    for (const auto& w : b.source) src.push_back(table.source_vocab().find(w));
    auto& tgt = ids.target[idx];
    tgt.reserve(b.target.size());
    for (const auto& w : b.target) tgt.push_back(table.target_vocab().find(w));
  }
  return ids;
}

void column_scores(const SentenceIds& ids, const LspModel& model, std::size_t j,
                   std::vector<double>& scores) {
  const std::size_t m = ids.source[0].size() - 1;
  scores.assign(m + 1, 0.0);
  for (Mechanism k : kAllMechanisms) {
    const auto idx = static_cast<std::size_t>(k);
    const WordId t = ids.target[idx][j];
    for (std::size_t i = 0; i <= m; ++i) scores[i] += model.theta(k, ids.source[idx][i], t);
  }
  for (double& s : scores) s *= kMechanismPrior;
}

}  // namespace

void accumulate_counts(const Bitext& b, const Alignment& a, CountTable& counts) {
  check_links(b, a);
  std::vector<char> linked(b.target.size(), 0);
  for (const Link& l : a) {
    counts.add(b.source[l.source], b.target[l.target]);
    linked[l.target] = 1;
  }
  for (std::size_t j = 0; j < b.target.size(); ++j) {
    if (!linked[j]) counts.add_null(b.target[j]);
  }
}

TranslationTable estimate_table(std::span<const Bitext> corpus,
                                std::span<const Alignment> alignments, Mechanism k) {
  if (corpus.size() != alignments.size()) {
    throw Error(Errc::kLengthMismatch, std::to_string(corpus.size()) + " bitexts but " +
                                           std::to_string(alignments.size()) + " alignments");
  }
  CountTable counts;
  for (std::size_t s = 0; s < corpus.size(); ++s) accumulate_counts(corpus[s], alignments[s], counts);
  return counts.normalize(k);
}

LspModel::LspModel(std::vector<TranslationTable> tables, double smoothing)
    : smoothing_(smoothing) {
  if (tables.size() != 3) {
    throw Error(Errc::kConfig, "the mixture needs exactly three tables, got " +
                                   std::to_string(tables.size()));
  }
  if (!(smoothing >= 0.0)) throw Error(Errc::kConfig, "smoothing must be >= 0");
  std::sort(tables.begin(), tables.end(), [](const auto& a, const auto& b) {
    return a.mechanism() < b.mechanism();
  });
  for (std::size_t k = 0; k < 3; ++k) {
    if (tables[k].mechanism() != kAllMechanisms[k]) {
      throw Error(Errc::kConfig, "the mixture needs one table per mechanism");
    }
  }
  tables_ = std::move(tables);
}

double LspModel::theta(Mechanism k, WordId s, WordId t) const {
  const TranslationTable& table = tables_[static_cast<std::size_t>(k)];
  const double p = table.prob(s, t);
  if (smoothing_ == 0.0) return p;
  const auto vocab = static_cast<double>(table.target_vocab().size());
  return (p + smoothing_) / (1.0 + smoothing_ * vocab);
}

std::vector<double> posterior_scores(const Bitext& b, const LspModel& model, std::size_t j) {
  if (j >= b.target.size()) throw Error(Errc::kIndexOutOfRange, "target position out of range");
  std::vector<double> scores;
  column_scores(map_sentence(b, model), model, j, scores);
  return scores;
}

ScoredAlignment posterior_align_scored(const Bitext& b, const LspModel& model) {
  const SentenceIds ids = map_sentence(b, model);
  const std::size_t m = b.source.size();
  const std::size_t n = b.target.size();
  ScoredAlignment out;
  out.confidence.assign(n, 0.0);
  std::vector<double> scores;
  for (std::size_t j = 0; j < n; ++j) {
    column_scores(ids, model, j, scores);
    std::size_t best = 0;
    double best_diag = diagonal_distance(0, j + 1, m, n);
    double total = scores[0];
    for (std::size_t i = 1; i <= m; ++i) {
      total += scores[i];
      const double diag = diagonal_distance(i, j + 1, m, n);
      if (scores[i] > scores[best] || (scores[i] == scores[best] && diag < best_diag)) {
        best = i;
        best_diag = diag;
      }
    }
    if (best == 0 || scores[best] <= 0.0) continue;
    out.links.push_back({static_cast<uint32_t>(best - 1), static_cast<uint32_t>(j)});
    out.confidence[j] = scores[best] / total;
  }
  normalize(out.links);
  return out;
}

Alignment posterior_align(const Bitext& b, const LspModel& model) {
  return posterior_align_scored(b, model).links;
}

std::vector<std::string> sample_translation(std::span<const std::string> source,
                                            const LspModel& model, std::size_t length,
                                            uint64_t seed, std::vector<Mechanism>* mechanisms) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> draw_position(0, source.size());
  std::uniform_int_distribution<int> draw_mechanism(0, 2);
  std::uniform_real_distribution<double> draw_unit(0.0, 1.0);
  std::vector<std::string> target;
  target.reserve(length);
  if (mechanisms) mechanisms->clear();
  for (std::size_t j = 0; j < length; ++j) {
    const std::size_t a = draw_position(rng);
    const auto k = static_cast<Mechanism>(draw_mechanism(rng));
    const double u = draw_unit(rng);
    if (mechanisms) mechanisms->push_back(k);
    const TranslationTable& table = model.table(k);
    const WordId s = a == 0 ? kNullWord : table.source_vocab().find(source[a - 1]);
    const auto row = table.row(s);
    if (row.empty()) {
      target.emplace_back(a == 0 ? std::string(kNullToken) : source[a - 1]);
      continue;
    }
    double cumulative = 0.0;
    WordId chosen = row.back().target;
    for (const auto& e : row) {
      cumulative += e.prob;
      if (u < cumulative) {
        chosen = e.target;
        break;
      }
    }
    target.push_back(table.target_vocab().word(chosen));
  }
  return target;
}

}  // namespace lspalign
