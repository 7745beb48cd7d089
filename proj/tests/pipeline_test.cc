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

#include <nlohmann/json.hpp>

#include "lspalign/error.h"
#include "lspalign/pipeline.h"
#include "test_files.h"

using namespace lspalign;
using testing::slurp;
using testing::TempDir;

namespace {

constexpr const char* kToy =
    "the house ||| das haus\n"
    "the book ||| das buch\n"
    "a book ||| ein buch\n";

constexpr const char* kToyEmbeddings =
    "6 2\n"
    "house 1 0\n"
    "haus 1 0.1\n"
    "book 0 1\n"
    "buch 0.1 1\n"
    "the 1 1\n"
    "das 1 0.9\n";

constexpr const char* kIdentityTranslit = "# identity\n";

PipelineConfig toy_config(const TempDir& dir) {
  PipelineConfig cfg;
  cfg.bitext = dir.write("toy.txt", kToy);
  cfg.embeddings = dir.write("emb.txt", kToyEmbeddings);
  cfg.translit_src = dir.write("translit.tsv", kIdentityTranslit);
  cfg.model_dir = dir.file("model");
  return cfg;
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::kIo;
}

}  // namespace

TEST_CASE("train writes three tables and a manifest") {
  TempDir dir("train");
  PipelineConfig cfg = toy_config(dir);
  const auto summary = cmd_train(cfg);
  CHECK(summary.sentences == 3);
  for (Mechanism k : kAllMechanisms) {
    CHECK(std::filesystem::exists(dir.file("model/" + table_file_name(k))));
  }
  const auto manifest = nlohmann::json::parse(slurp(dir.file("model/manifest.json")));
  CHECK(manifest["sentences"] == 3);
  CHECK(manifest["config_hash"] == summary.config_hash);

  // Reruns and other thread counts give byte-identical artifacts.
  std::vector<std::string> first;
  for (const auto& a : summary.artifacts) first.push_back(slurp(dir.file("model/" + a)));
  first.push_back(slurp(dir.file("model/manifest.json")));
  cfg.threads = 3;
  const auto again = cmd_train(cfg);
  CHECK(again.artifacts == summary.artifacts);
  for (std::size_t k = 0; k < again.artifacts.size(); ++k) {
    CHECK(slurp(dir.file("model/" + again.artifacts[k])) == first[k]);
  }
  CHECK(slurp(dir.file("model/manifest.json")) == first.back());
}

TEST_CASE("train configuration errors") {
  TempDir dir("train_err");
  PipelineConfig cfg = toy_config(dir);
  cfg.method = Method::kSemantic;
  cfg.embeddings.clear();
  CHECK(code_of([&] { cmd_train(cfg); }) == Errc::kConfig);
  cfg = toy_config(dir);
  cfg.method = Method::kPhonetic;
  cfg.translit_src.clear();
  CHECK(code_of([&] { cmd_train(cfg); }) == Errc::kConfig);
  cfg = toy_config(dir);
  cfg.train.iterations = 0;
  CHECK(code_of([&] { cmd_train(cfg); }) == Errc::kConfig);
  cfg = toy_config(dir);
  cfg.bitext = dir.write("bad.txt", "a b ||| c\nno delimiter\n");
  try {
    cmd_train(cfg);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kMissingDelimiter);
    CHECK(std::string(e.what()).find("bad.txt:2") != std::string::npos);
  }
  cfg.bitext = dir.write("empty.txt", "");
  CHECK(code_of([&] { cmd_train(cfg); }) == Errc::kEmptyCorpus);
}

TEST_CASE("align") {
  TempDir dir("align");
  PipelineConfig cfg = toy_config(dir);
  cmd_train(cfg);

  // One-hot lexical model: a single shared word pair.
  PipelineConfig one;
  one.bitext = dir.write("one.txt", "a ||| x\n");
  one.model_dir = dir.file("one");
  one.method = Method::kLexical;
  cmd_train(one);
  one.output = dir.file("one.align");
  cmd_align(one);
  CHECK(slurp(one.output) == "0-0\n");

  for (Method m : {Method::kLexical, Method::kSemantic, Method::kPhonetic, Method::kLsp}) {
    CAPTURE(method_name(m));
    cfg.method = m;
    cfg.output = dir.file("out.align");
    cfg.confidences_out = dir.file("out.conf");
    cfg.threads = 1;
    const auto summary = cmd_align(cfg);
    CHECK(summary.sentences == 3);
    const std::string serial = slurp(cfg.output);
    const std::string conf = slurp(cfg.confidences_out);
    CHECK(std::count(serial.begin(), serial.end(), '\n') == 3);
    CHECK(std::count(conf.begin(), conf.end(), '\n') == 3);
    cfg.threads = 4;
    cmd_align(cfg);
    CHECK(slurp(cfg.output) == serial);
    CHECK(slurp(cfg.confidences_out) == conf);
  }

  // Empty input, empty output.
  cfg.method = Method::kLsp;
  cfg.bitext = dir.write("empty.txt", "");
  cfg.output = dir.file("empty.align");
  cfg.confidences_out.clear();
  CHECK(cmd_align(cfg).sentences == 0);
  CHECK(slurp(cfg.output).empty());

  // A bitext the model has never seen.
  cfg.bitext = dir.write("foreign.txt", "zzz yyy ||| das\n");
  CHECK(code_of([&] { cmd_align(cfg); }) == Errc::kModelMismatch);

  // lsp with only two tables.
  std::filesystem::remove(dir.file("model/" + table_file_name(Mechanism::kPhonetic)));
  cfg.bitext = dir.file("toy.txt");
  CHECK(code_of([&] { cmd_align(cfg); }) == Errc::kConfig);
}

TEST_CASE("project") {
  TempDir dir("project");
  PipelineConfig cfg;
  cfg.bitext = dir.write("bitext.txt", "John lives in Paris ||| Juan vive en París\nhe left ||| se fue\n");
  cfg.alignments = dir.write("a.align", "0-0 1-1 2-2 3-3\n0-0 1-1\n");
  cfg.spans = dir.write("spans.tsv", "0\t0\t1\tPER\tJohn\n0\t3\t4\tLOC\tParis\n");
  cfg.output = dir.file("pairs.jsonl");
  cfg.projections_out = dir.file("debug.tsv");
  auto summary = cmd_project(cfg);
  CHECK(summary.sentences == 2);
  CHECK(summary.projected == 2);
  CHECK(summary.pairs_written == 2);
  const std::string jsonl = slurp(cfg.output);
  CHECK(jsonl.find("\"París\"") != std::string::npos);
  CHECK(slurp(cfg.projections_out).find("Juan") != std::string::npos);

  // The same through BIO tags.
  PipelineConfig tags = cfg;
  tags.spans.clear();
  tags.tags = dir.write("tags.txt", "B-PER O O B-LOC\nO O\n");
  tags.output = dir.file("pairs_tags.jsonl");
  tags.projections_out.clear();
  cmd_project(tags);
  CHECK(slurp(tags.output) == jsonl);

  // Coverage gate: 2 aligned positions over an envelope of 4.
  cfg.projection.min_coverage = 0.75;
  cfg.alignments = dir.write("sparse.align", "0-0 0-3\n\n");
  cfg.spans = dir.write("one.tsv", "0\t0\t1\tPER\tJohn\n");
  summary = cmd_project(cfg);
  CHECK(summary.projected == 0);
  CHECK(summary.rejected == 1);
  CHECK(slurp(cfg.output).empty());

  cfg.projection = ProjectionConfig{};

  // Unknown sentence id.
  cfg.spans = dir.write("far.tsv", "7\t0\t1\tPER\tJohn\n");
  try {
    cmd_project(cfg);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kUnknownSentence);
    CHECK(std::string(e.what()).find("7") != std::string::npos);
  }

  // Too few alignment lines.
  cfg.spans = dir.write("one.tsv", "0\t0\t1\tPER\tJohn\n");
  cfg.alignments = dir.write("short.align", "0-0\n");
  CHECK(code_of([&] { cmd_project(cfg); }) == Errc::kLengthMismatch);
}

TEST_CASE("eval") {
  TempDir dir("eval");
  PipelineConfig cfg;
  cfg.gold = dir.write("gold.tsv", "Paris\tParís\n");
  cfg.mined = dir.write("mined.jsonl",
                        R"({"src":"Paris","tgt":"París","type":"LOC","count":2,"score":1.0})"
                        "\n");
  cfg.output = dir.file("report.json");
  auto report = cmd_eval(cfg);
  CHECK(report.f1 == 1.0);
  CHECK(report.matched == 1);
  CHECK(nlohmann::json::parse(slurp(cfg.output))["f1"] == 1.0);

  cfg.mined = dir.write("empty.jsonl", "");
  report = cmd_eval(cfg);
  CHECK(report.matched == 0);
  CHECK(report.f1 == 0.0);

  cfg.gold = dir.write("bad.tsv", "Paris\tParís\nno tab here\n");
  try {
    cmd_eval(cfg);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(is_data_error(e.code()));
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("sample") {
  TempDir dir("sample");
  PipelineConfig cfg = toy_config(dir);
  cmd_train(cfg);
  cfg.num_sentences = 50;
  cfg.seed = 17;
  cfg.output = dir.file("a.txt");
  cmd_sample(cfg);
  cfg.output = dir.file("b.txt");
  cmd_sample(cfg);
  const std::string a = slurp(dir.file("a.txt"));
  CHECK(a == slurp(dir.file("b.txt")));
  CHECK(std::count(a.begin(), a.end(), '\n') == 50);
  cfg.seed = 18;
  cmd_sample(cfg);
  CHECK(slurp(cfg.output) != a);

  cfg.num_sentences = 0;
  cmd_sample(cfg);
  CHECK(slurp(cfg.output).empty());

  cfg.min_len = 5;
  cfg.max_len = 2;
  CHECK(code_of([&] { cmd_sample(cfg); }) == Errc::kConfig);
}

TEST_CASE("stats") {
  TempDir dir("stats");
  PipelineConfig cfg;
  cfg.bitext = dir.write("toy.txt", kToy);
  const auto j = nlohmann::json::parse(cmd_stats(cfg));
  CHECK(j["sentences"] == 3);
  CHECK(j["source_tokens"] == 6);
  CHECK(j["source_types"] == 4);
}
