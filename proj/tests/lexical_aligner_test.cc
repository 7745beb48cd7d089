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

#include <cmath>
#include <random>
#include <sstream>

#include "lspalign/error.h"
#include "lspalign/lexical_aligner.h"
#include "oracles.h"

using namespace lspalign;

namespace {

std::vector<Bitext> parse_corpus(std::initializer_list<const char*> lines) {
  std::vector<Bitext> out;
  for (const char* l : lines) out.push_back(parse_bitext_line(l, out.size()));
  return out;
}

std::string argmax_target(const LexicalModel& model, std::string_view source) {
  const auto& t = model.translation;
  const WordId s = t.source_vocab().find(source);
  REQUIRE(s != kNoWord);
  double best = -1.0;
  std::string word;
  for (const auto& e : t.row(s)) {
    if (e.prob > best) {
      best = e.prob;
      word = t.target_vocab().word(e.target);
    }
  }
  return word;
}

// Builds a single-row lexical model directly from (source, target, prob).
LexicalModel make_model(const std::vector<std::tuple<std::string, std::string, double>>& rows,
                        double tension, double null_prob) {
  CountTable c;
  for (const auto& [s, t, p] : rows) c.add(s, t, p);
  // normalize() renormalizes; callers pass rows that already sum to 1.
  return LexicalModel{c.normalize(Mechanism::kLexical), tension, null_prob};
}

// Random synthetic corpus: a one-to-one dictionary, shuffled word order.
std::vector<Bitext> dictionary_corpus(std::size_t sentences, std::size_t types, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> word(0, types - 1);
  std::uniform_int_distribution<std::size_t> len(2, 7);
  std::vector<Bitext> corpus;
  for (std::size_t k = 0; k < sentences; ++k) {
    Bitext b;
    b.id = k;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t w = word(rng);
      b.source.push_back("s" + std::to_string(w));
      b.target.push_back("t" + std::to_string(w));
    }
    std::shuffle(b.target.begin(), b.target.end(), rng);
    corpus.push_back(std::move(b));
  }
  return corpus;
}

}  // namespace

TEST_CASE("alignment_prior") {
  // Zero tension and zero NULL mass give a uniform prior.
  for (std::size_t j = 1; j <= 3; ++j) {
    for (std::size_t i = 1; i <= 4; ++i) {
      CHECK(alignment_prior(i, j, 4, 3, 0.0, 0.0) == doctest::Approx(0.25).epsilon(1e-15));
    }
  }
  CHECK(alignment_prior(0, 2, 5, 5, 4.0, 0.08) == 0.08);
  CHECK(alignment_prior(5, 5, 10, 10, 4.0, 0.08) > alignment_prior(1, 5, 10, 10, 4.0, 0.08));

  // Direct evaluation of (1-p0) exp(-lambda |i/m - j/n|) / Z for m = n = 2.
  const double w1 = std::exp(-4.0 * 0.5);
  const double w2 = 1.0;
  CHECK(alignment_prior(1, 1, 2, 2, 4.0, 0.1) == doctest::Approx(0.9 * w2 / (w1 + w2)));
  CHECK(alignment_prior(2, 1, 2, 2, 4.0, 0.1) == doctest::Approx(0.9 * w1 / (w1 + w2)));

  CHECK_THROWS_AS(alignment_prior(5, 1, 4, 3, 4.0, 0.08), Error);
  CHECK_THROWS_AS(alignment_prior(1, 0, 4, 3, 4.0, 0.08), Error);
  CHECK_THROWS_AS(alignment_prior(1, 4, 4, 3, 4.0, 0.08), Error);
}

TEST_CASE("alignment_prior sums to one over i for every j") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> len(1, 30);
  std::uniform_real_distribution<double> tension(0.0, 20.0);
  std::uniform_real_distribution<double> p0(0.0, 0.99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = len(rng);
    const std::size_t n = len(rng);
    const double l = tension(rng);
    const double p = p0(rng);
    for (std::size_t j = 1; j <= n; ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i <= m; ++i) sum += alignment_prior(i, j, m, n, l, p);
      CHECK(std::abs(sum - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("em_train matches the Model 1 oracle at zero tension") {
  const auto corpus = parse_corpus({"a ||| x", "a b ||| x y"});
  TrainConfig cfg;
  cfg.iterations = 5;
  cfg.tension = 0.0;
  cfg.null_prob = 0.0;
  const LexicalModel model = em_train(corpus, cfg);
  CHECK(argmax_target(model, "a") == "x");
  CHECK(argmax_target(model, "b") == "y");

  const auto ref = oracle::model1_em({{{"a"}, {"x"}}, {{"a", "b"}, {"x", "y"}}}, 5);
  for (const auto& [s, row] : ref.theta) {
    for (const auto& [t, p] : row) {
      CHECK(model.translation.prob(s, t) == doctest::Approx(p).epsilon(1e-12));
    }
  }
  // Frozen from the oracle's first iteration: theta(a,x) = 1.5 / 2.
  cfg.iterations = 1;
  CHECK(em_train(corpus, cfg).translation.prob("a", "x") == doctest::Approx(0.75));
}

TEST_CASE("em_train trivial and error cases") {
  const auto corpus = parse_corpus({"a ||| x"});
  for (double l : {0.0, 4.0}) {
    for (double p : {0.0, 0.08, 0.5}) {
      TrainConfig cfg;
      cfg.tension = l;
      cfg.null_prob = p;
      CHECK(em_train(corpus, cfg).translation.prob("a", "x") == doctest::Approx(1.0));
    }
  }
  CHECK_THROWS_AS(em_train(std::vector<Bitext>{}, TrainConfig{}), Error);
  TrainConfig bad;
  bad.null_prob = 1.0;
  CHECK_THROWS_AS(em_train(corpus, bad), Error);
  bad = TrainConfig{};
  bad.tension = -1.0;
  CHECK_THROWS_AS(em_train(corpus, bad), Error);
}

TEST_CASE("em_train rows sum to one and log-likelihood never decreases") {
  const auto corpus = dictionary_corpus(300, 30, 17);
  TrainConfig cfg;
  cfg.iterations = 8;
  std::vector<double> ll;
  const IdCorpus ids = make_id_corpus(corpus, Direction::kForward);
  const LexicalModel model = em_train(ids, cfg, &ll);
  REQUIRE(ll.size() == 8);
  for (std::size_t k = 1; k < ll.size(); ++k) CHECK(ll[k] >= ll[k - 1] - 1e-9);
  CHECK(corpus_log_likelihood(ids, model) >= ll.back() - 1e-9);
  const auto& t = model.translation;
  for (WordId s = 0; s < t.num_rows(); ++s) {
    double sum = 0.0;
    for (const auto& e : t.row(s)) sum += e.prob;
    if (!t.row(s).empty()) CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("em_train is independent of the shard count") {
  const auto corpus = dictionary_corpus(1500, 40, 23);
  TrainConfig one;
  TrainConfig four;
  four.shards = 4;
  const LexicalModel a = em_train(corpus, one);
  const LexicalModel b = em_train(corpus, four);
  REQUIRE(a.translation.num_entries() == b.translation.num_entries());
  const auto ea = a.translation.entries();
  const auto eb = b.translation.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) {
    CHECK(ea[k].target == eb[k].target);
    CHECK(ea[k].prob == eb[k].prob);
  }
  for (const Bitext& bt : corpus) {
    CHECK(viterbi_align(bt, a, Direction::kForward) == viterbi_align(bt, b, Direction::kForward));
  }
}

TEST_CASE("viterbi_align") {
  const Bitext ax = parse_bitext_line("a ||| x", 0);
  CHECK(viterbi_align(ax, make_model({{"a", "x", 1.0}}, 4.0, 0.08), Direction::kForward) ==
        Alignment{{0, 0}});

  // Unknown target word: every score is zero, so no link.
  const Bitext unk = parse_bitext_line("a ||| x zz", 0);
  CHECK(viterbi_align(unk, make_model({{"a", "x", 1.0}}, 4.0, 0.08), Direction::kForward) ==
        Alignment{{0, 0}});

  // Equal theta: the diagonal prior picks b (|2/2 - 1/1| = 0).
  const Bitext abx = parse_bitext_line("a b ||| x", 0);
  const auto tied = make_model({{"a", "x", 1.0}, {"b", "x", 1.0}}, 4.0, 0.0);
  CHECK(viterbi_align(abx, tied, Direction::kForward) == Alignment{{1, 0}});

  // With zero tension the prior is flat and the tie goes to the diagonal, then
  // the lower index: j = 1 of n = 2 sits between i = 1 and i = 2 of m = 4.
  const Bitext abcd = parse_bitext_line("a a a a ||| x x", 0);
  const auto flat = make_model({{"a", "x", 1.0}}, 0.0, 0.0);
  CHECK(viterbi_align(abcd, flat, Direction::kForward) == Alignment{{1, 0}, {3, 1}});

  // At most one link per target position.
  const auto corpus = dictionary_corpus(200, 20, 4);
  const LexicalModel m = em_train(corpus, TrainConfig{});
  for (const Bitext& b : corpus) {
    std::vector<int> seen(b.target.size(), 0);
    for (const Link& l : viterbi_align(b, m, Direction::kForward)) CHECK(++seen[l.target] == 1);
  }
}

TEST_CASE("viterbi_align reverse direction swaps roles") {
  auto corpus = parse_corpus({"a b ||| x", "a ||| x"});
  IdCorpus rev = make_id_corpus(corpus, Direction::kReverse);
  const LexicalModel model = em_train(rev, TrainConfig{});
  // Reverse model: x is the "source". Each source position of the bitext is
  // a target in the reverse model and may get a link to x.
  const Alignment a = viterbi_align(corpus[0], model, Direction::kReverse);
  for (const Link& l : a) {
    CHECK(l.source < 2);
    CHECK(l.target == 0);
  }
  CHECK(!a.empty());
}

TEST_CASE("gdfa_symmetrize examples") {
  CHECK(gdfa_symmetrize({{0, 0}, {1, 1}}, {{0, 0}, {1, 1}}, 2, 2) == Alignment{{0, 0}, {1, 1}});
  CHECK(gdfa_symmetrize({}, {}, 3, 3).empty());
  // Hand trace: intersection empty; grow has no seed; final-and takes the
  // forward (0,0) first, after which (0,1) has its source covered.
  CHECK(gdfa_symmetrize({{0, 0}}, {{0, 1}}, 1, 2) == Alignment{{0, 0}});
  // Grow from the seed (0,0): the non-diagonal neighbor (1,0) comes first
  // (source 1 free), then the diagonal (1,1) still has target 1 free.
  CHECK(gdfa_symmetrize({{0, 0}, {1, 1}}, {{0, 0}, {1, 0}}, 2, 2) ==
        Alignment{{0, 0}, {1, 0}, {1, 1}});
  // A union link whose ends are both covered is never added.
  CHECK(gdfa_symmetrize({{0, 0}, {1, 1}, {0, 1}}, {{0, 0}, {1, 1}}, 2, 2) ==
        Alignment{{0, 0}, {1, 1}});
  CHECK_THROWS_AS(gdfa_symmetrize({{2, 0}}, {}, 2, 2), Error);
}

TEST_CASE("gdfa_symmetrize stays between intersection and union") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> len(1, 7);
  std::bernoulli_distribution coin(0.3);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = len(rng);
    const std::size_t n = len(rng);
    Alignment f;
    Alignment r;
    for (uint32_t i = 0; i < m; ++i) {
      for (uint32_t j = 0; j < n; ++j) {
        if (coin(rng)) f.push_back({i, j});
        if (coin(rng)) r.push_back({i, j});
      }
    }
    const Alignment g = gdfa_symmetrize(f, r, m, n);
    for (const Link& l : f) {
      if (std::binary_search(r.begin(), r.end(), l)) CHECK(std::binary_search(g.begin(), g.end(), l));
    }
    for (const Link& l : g) {
      CHECK((std::binary_search(f.begin(), f.end(), l) || std::binary_search(r.begin(), r.end(), l)));
    }
    CHECK(gdfa_symmetrize(f, f, m, n) == f);
  }
}

TEST_CASE("lexical model save/load round trip") {
  const auto corpus = dictionary_corpus(100, 10, 8);
  TrainConfig cfg;
  cfg.tension = 3.5;
  cfg.null_prob = 0.1;
  const LexicalModel m = em_train(corpus, cfg);
  std::stringstream buf;
  save_lexical_model(buf, m);
  const LexicalModel back = load_lexical_model(buf);
  CHECK(back.tension == 3.5);
  CHECK(back.null_prob == 0.1);
  for (const Bitext& b : corpus) {
    CHECK(viterbi_align(b, back, Direction::kForward) == viterbi_align(b, m, Direction::kForward));
    for (const auto& s : b.source) {
      for (const auto& t : b.target) CHECK(back.translation.prob(s, t) == m.translation.prob(s, t));
    }
  }
}
