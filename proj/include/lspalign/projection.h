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

#ifndef LSPALIGN_PROJECTION_H_
#define LSPALIGN_PROJECTION_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "lspalign/corpus_io.h"

namespace lspalign {

struct ProjectionConfig {
  // Required (aligned target positions) / (projected span length).
  double min_coverage = 0.5;
  std::size_t max_span_len = 10;

  void validate() const;
};

// Projects a source span onto the target side: the envelope of all target
// positions linked to the span, rejected when too sparse or too long. Throws
// kIndexOutOfRange if the span or a link does not fit.
std::optional<EntitySpan> project_span(const EntitySpan& span, const Alignment& a,
                                       std::size_t target_len, const ProjectionConfig& cfg);

// Count/score accumulator keyed by (source surface, target surface, type).
class PairAggregator {
 public:
  void add(const std::string& source, const std::string& target, const std::string& type,
           double score);
  void merge(const PairAggregator& other);
  std::size_t observations() const { return observations_; }
  // Sorted by descending count, then source, target and type.
  std::vector<EntityPair> pairs() const;

 private:
  struct Stats {
    std::size_t count = 0;
    double score_sum = 0.0;
  };
  std::map<std::tuple<std::string, std::string, std::string>, Stats> stats_;
  std::size_t observations_ = 0;
};

struct ProjectionCounts {
  std::size_t projected = 0;
  std::size_t rejected = 0;
};

// Projects every span of one sentence and records the successful ones.
// `confidence` holds one value per target position (empty means 1.0
// everywhere); an observation's score is the mean over its aligned target
// positions.
ProjectionCounts project_sentence(const Bitext& b, std::span<const EntitySpan> spans,
                                  const Alignment& a, std::span<const double> confidence,
                                  const ProjectionConfig& cfg, PairAggregator& out);

// `spans[k]` and `alignments[k]` belong to corpus[k]. Throws kLengthMismatch.
std::vector<EntityPair> mine_pairs(std::span<const Bitext> corpus,
                                   std::span<const std::vector<EntitySpan>> spans,
                                   std::span<const Alignment> alignments,
                                   const ProjectionConfig& cfg,
                                   ProjectionCounts* counts = nullptr);

}  // namespace lspalign

#endif  // LSPALIGN_PROJECTION_H_
