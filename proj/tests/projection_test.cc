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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lspalign/error.h"
#include "lspalign/projection.h"
#include "lspalign/unicode.h"

using namespace lspalign;

namespace {

EntitySpan span(std::size_t start, std::size_t end, std::string type = "PER") {
  return EntitySpan{0, start, end, std::move(type), ""};
}

}  // namespace

TEST_CASE("project_span examples") {
  const ProjectionConfig cfg;
  const auto p = project_span(span(0, 2), {{0, 3}, {1, 4}}, 8, cfg);
  REQUIRE(p.has_value());
  CHECK(p->start == 3);
  CHECK(p->end == 5);
  CHECK(p->entity_type == "PER");

  CHECK(!project_span(span(0, 2), {{0, 3}, {1, 7}}, 8, cfg).has_value());  // coverage 0.4
  CHECK(!project_span(span(0, 2), {{2, 3}}, 8, cfg).has_value());
  CHECK(!project_span(span(0, 2), {}, 8, cfg).has_value());

  ProjectionConfig narrow;
  narrow.max_span_len = 2;
  narrow.min_coverage = 0.1;
  CHECK(!project_span(span(0, 2), {{0, 0}, {1, 2}}, 8, narrow).has_value());
  CHECK(project_span(span(0, 2), {{0, 0}, {1, 1}}, 8, narrow).has_value());
}

TEST_CASE("project_span errors and config") {
  const ProjectionConfig cfg;
  CHECK_THROWS_AS(project_span(span(0, 2), {{0, 9}}, 8, cfg), Error);
  CHECK_THROWS_AS(project_span(span(2, 2), {}, 8, cfg), Error);
  ProjectionConfig bad;
  bad.min_coverage = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad.min_coverage = 1.5;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad.min_coverage = 1.0;
  bad.max_span_len = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("project_span properties") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> len(1, 12);
  std::bernoulli_distribution coin(0.3);
  ProjectionConfig cfg;
  cfg.min_coverage = 0.4;
  cfg.max_span_len = 6;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t m = len(rng), n = len(rng);
    Alignment a;
    for (uint32_t i = 0; i < m; ++i)
      for (uint32_t j = 0; j < n; ++j)
        if (coin(rng)) a.push_back({i, j});
    std::uniform_int_distribution<std::size_t> pos(0, m - 1);
    std::size_t s = pos(rng), e = pos(rng);
    if (s > e) std::swap(s, e);
    const EntitySpan sp = span(s, e + 1);
    const auto p = project_span(sp, a, n, cfg);
    if (p) {
      CHECK(p->start < p->end);
      CHECK(p->end <= n);
      CHECK(p->end - p->start <= cfg.max_span_len);
    }
    // Adding a link inside the span that falls within the current envelope
    // keeps a successful projection successful.
    if (p) {
      std::uniform_int_distribution<std::size_t> inside(p->start, p->end - 1);
      Alignment more = a;
      more.push_back({static_cast<uint32_t>(s), static_cast<uint32_t>(inside(rng))});
      normalize(more);
      const auto q = project_span(sp, more, n, cfg);
      REQUIRE(q.has_value());
      CHECK(q->start == p->start);
      CHECK(q->end == p->end);
    }
    // Any added link only grows the envelope; failure then comes from the gates.
    {
      std::uniform_int_distribution<std::size_t> tgt(0, n - 1);
      Alignment more = a;
      more.push_back({static_cast<uint32_t>(s), static_cast<uint32_t>(tgt(rng))});
      normalize(more);
      const auto q = project_span(sp, more, n, cfg);
      if (p && q) {
        CHECK(q->start <= p->start);
        CHECK(q->end >= p->end);
      }
    }
  }
}

TEST_CASE("mine_pairs aggregation") {
  std::vector<Bitext> corpus;
  std::vector<std::vector<EntitySpan>> spans;
  std::vector<Alignment> links;
  for (std::size_t k = 0; k < 3; ++k) {
    corpus.push_back(parse_bitext_line("Paris is big ||| Parigi è grande", k));
    spans.push_back({EntitySpan{k, 0, 1, "LOC", "Paris"}});
    links.push_back({{0, 0}, {1, 1}, {2, 2}});
  }
  ProjectionCounts counts;
  auto pairs = mine_pairs(corpus, spans, links, ProjectionConfig{}, &counts);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].source_surface == "Paris");
  CHECK(pairs[0].target_surface == "Parigi");
  CHECK(pairs[0].entity_type == "LOC");
  CHECK(pairs[0].count == 3);
  CHECK(pairs[0].score == 1.0);
  CHECK(counts.projected == 3);
  CHECK(counts.rejected == 0);

  // A second target for the same source entity is a separate record.
  corpus.push_back(parse_bitext_line("Paris is big ||| Paris est grand", 3));
  spans.push_back({EntitySpan{3, 0, 1, "LOC", "Paris"}});
  links.push_back({{0, 0}});
  pairs = mine_pairs(corpus, spans, links, ProjectionConfig{});
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].count == 3);
  CHECK(pairs[1].target_surface == "Paris");
  CHECK(pairs[1].count == 1);

  const std::vector<std::vector<EntitySpan>> none(corpus.size());
  CHECK(mine_pairs(corpus, none, links, ProjectionConfig{}).empty());
  CHECK_THROWS_AS(mine_pairs(corpus, spans, std::span<const Alignment>(links).first(2),
                             ProjectionConfig{}),
                  Error);
}

TEST_CASE("project_sentence scores with confidences") {
  const Bitext b = parse_bitext_line("New York ||| Nueva York", 0);
  const std::vector<EntitySpan> spans = {EntitySpan{0, 0, 2, "LOC", "New York"}};
  PairAggregator agg;
  const std::vector<double> conf = {0.5, 0.9};
  const auto counts = project_sentence(b, spans, {{0, 0}, {1, 1}}, conf, ProjectionConfig{}, agg);
  CHECK(counts.projected == 1);
  const auto pairs = agg.pairs();
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].target_surface == "Nueva York");
  CHECK(pairs[0].score == doctest::Approx(0.7));

  const std::vector<EntitySpan> wrong = {EntitySpan{0, 0, 2, "LOC", "Old York"}};
  CHECK_THROWS_AS(project_sentence(b, wrong, {}, {}, ProjectionConfig{}, agg), Error);
}

TEST_CASE("mined counts sum to successful projections") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> word(0, 4);
  std::uniform_int_distribution<std::size_t> len(1, 8);
  std::bernoulli_distribution coin(0.25);
  std::vector<Bitext> corpus;
  std::vector<std::vector<EntitySpan>> spans;
  std::vector<Alignment> links;
  for (std::size_t k = 0; k < 300; ++k) {
    Bitext b;
    b.id = k;
    const std::size_t m = len(rng), n = len(rng);
    for (std::size_t i = 0; i < m; ++i) b.source.push_back("s" + std::to_string(word(rng)));
    for (std::size_t j = 0; j < n; ++j) b.target.push_back("t" + std::to_string(word(rng)));
    Alignment a;
    for (uint32_t i = 0; i < m; ++i)
      for (uint32_t j = 0; j < n; ++j)
        if (coin(rng)) a.push_back({i, j});
    std::vector<EntitySpan> ss;
    for (std::size_t i = 0; i + 1 < m; i += 3) {
      const std::vector<std::string> words(b.source.begin() + i, b.source.begin() + i + 2);
      ss.push_back(EntitySpan{k, i, i + 2, coin(rng) ? "PER" : "ORG", join(words)});
    }
    corpus.push_back(std::move(b));
    spans.push_back(std::move(ss));
    links.push_back(std::move(a));
  }
  ProjectionCounts counts;
  const auto pairs = mine_pairs(corpus, spans, links, ProjectionConfig{}, &counts);
  std::size_t total = 0, mentions = 0;
  for (const auto& p : pairs) {
    CHECK(p.count >= 1);
    CHECK(p.score == 1.0);
    total += p.count;
  }
  for (const auto& ss : spans) mentions += ss.size();
  CHECK(total == counts.projected);
  CHECK(counts.projected + counts.rejected == mentions);
  for (std::size_t k = 1; k < pairs.size(); ++k) CHECK(pairs[k - 1].count >= pairs[k].count);
}
