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

#include "lspalign/projection.h"

#include <algorithm>
#include <limits>

#include "lspalign/error.h"
#include "lspalign/unicode.h"

namespace lspalign {

void ProjectionConfig::validate() const {
  if (!(min_coverage > 0.0 && min_coverage <= 1.0)) {
    throw Error(Errc::kConfig, "min coverage must be in (0, 1]");
  }
  if (max_span_len < 1) throw Error(Errc::kConfig, "max span length must be positive");
}

std::optional<EntitySpan> project_span(const EntitySpan& span, const Alignment& a,
                                       std::size_t target_len, const ProjectionConfig& cfg) {
  if (span.start >= span.end) throw Error(Errc::kIndexOutOfRange, "empty source span");
  std::size_t lo = std::numeric_limits<std::size_t>::max();
  std::size_t hi = 0;
  std::vector<char> hit(target_len, 0);
  std::size_t covered = 0;
  for (const Link& l : a) {
    if (l.target >= target_len) {
      throw Error(Errc::kIndexOutOfRange, "link target " + std::to_string(l.target) +
                                              " outside target length " +
                                              std::to_string(target_len));
    }
    if (l.source < span.start || l.source >= span.end) continue;
    if (!hit[l.target]) {
      hit[l.target] = 1;
      ++covered;
    }
    lo = std::min<std::size_t>(lo, l.target);
    hi = std::max<std::size_t>(hi, l.target);
  }
  if (covered == 0) return std::nullopt;
  const std::size_t length = hi - lo + 1;
  if (length > cfg.max_span_len) return std::nullopt;
  if (static_cast<double>(covered) / static_cast<double>(length) < cfg.min_coverage) {
    return std::nullopt;
  }
  return EntitySpan{span.sentence_id, lo, hi + 1, span.entity_type, {}};
}

void PairAggregator::add(const std::string& source, const std::string& target,
                         const std::string& type, double score) {
  Stats& s = stats_[{source, target, type}];
  ++s.count;
  s.score_sum += score;
  ++observations_;
}

void PairAggregator::merge(const PairAggregator& other) {
  for (const auto& [key, theirs] : other.stats_) {
    Stats& mine = stats_[key];
    mine.count += theirs.count;
    mine.score_sum += theirs.score_sum;
  }
  observations_ += other.observations_;
}

std::vector<EntityPair> PairAggregator::pairs() const {
  std::vector<EntityPair> out;
  out.reserve(stats_.size());
  for (const auto& [key, s] : stats_) {
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), s.count,
                   s.score_sum / static_cast<double>(s.count)});
  }
  // The map already orders ties by (source, target, type).
  std::stable_sort(out.begin(), out.end(),
                   [](const EntityPair& a, const EntityPair& b) { return a.count > b.count; });
  return out;
}

ProjectionCounts project_sentence(const Bitext& b, std::span<const EntitySpan> spans,
                                  const Alignment& a, std::span<const double> confidence,
                                  const ProjectionConfig& cfg, PairAggregator& out) {
  ProjectionCounts counts;
  for (const EntitySpan& span : spans) {
    check_span(span, b);
    auto projected = project_span(span, a, b.target.size(), cfg);
    if (!projected) {
      ++counts.rejected;
      continue;
    }
    double score = 1.0;
    if (!confidence.empty()) {
      double sum = 0.0;
      std::size_t hits = 0;
      std::vector<char> seen(b.target.size(), 0);
      for (const Link& l : a) {
        if (l.source < span.start || l.source >= span.end || seen[l.target]) continue;
        seen[l.target] = 1;
        sum += confidence[l.target];
        ++hits;
      }
      score = sum / static_cast<double>(hits);
    }
    const std::string target = join(std::span(b.target).subspan(
        projected->start, projected->end - projected->start));
    out.add(span.surface, target, span.entity_type, score);
    ++counts.projected;
  }
  return counts;
}

std::vector<EntityPair> mine_pairs(std::span<const Bitext> corpus,
                                   std::span<const std::vector<EntitySpan>> spans,
                                   std::span<const Alignment> alignments,
                                   const ProjectionConfig& cfg, ProjectionCounts* counts) {
  cfg.validate();
  if (corpus.size() != spans.size() || corpus.size() != alignments.size()) {
    throw Error(Errc::kLengthMismatch,
                "corpus, span and alignment counts differ (" + std::to_string(corpus.size()) +
                    ", " + std::to_string(spans.size()) + ", " +
                    std::to_string(alignments.size()) + ")");
  }
  PairAggregator agg;
  ProjectionCounts total;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto c = project_sentence(corpus[k], spans[k], alignments[k], {}, cfg, agg);
    total.projected += c.projected;
    total.rejected += c.rejected;
  }
  if (counts) *counts = total;
  return agg.pairs();
}

}  // namespace lspalign
