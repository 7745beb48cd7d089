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

// Command-line front end: train, align, project, eval, sample, stats.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "lspalign/error.h"
#include "lspalign/pipeline.h"

namespace {

using lspalign::PipelineConfig;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("lsp_align");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("LSP_ALIGN_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

void add_method(CLI::App* cmd, PipelineConfig& cfg, std::string& method) {
  cmd->add_option("--method", method, "lexical | semantic | phonetic | lsp")
      ->check(CLI::IsMember({"lexical", "semantic", "phonetic", "lsp"}))
      ->capture_default_str();
  (void)cfg;
}

void add_resources(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--embeddings", cfg.embeddings, "word vectors (text format)");
  cmd->add_option("--translit-src", cfg.translit_src, "source-to-target transliteration TSV");
  cmd->add_option("--translit-tgt", cfg.translit_tgt, "target-to-source transliteration TSV");
}

void add_threads(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--threads", cfg.threads, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Cross-lingual entity pair mining via lexical, semantic and phonetic alignment"};
  app.require_subcommand(1);

  PipelineConfig cfg;
  std::string method = "lsp";
  std::string lexical_counts = "gdfa";

  auto* train = app.add_subcommand("train", "train aligners and write translation tables");
  add_method(train, cfg, method);
  train->add_option("--bitext", cfg.bitext, "bitext file (src ||| tgt)")->required();
  train->add_option("--model-dir", cfg.model_dir, "output directory")->required();
  add_resources(train, cfg);
  train->add_option("--iterations", cfg.train.iterations, "EM iterations")->capture_default_str();
  train->add_option("--lambda", cfg.train.tension, "diagonal tension")->capture_default_str();
  train->add_option("--p0", cfg.train.null_prob, "NULL alignment probability")
      ->capture_default_str();
  train->add_option("--lexical-counts", lexical_counts,
                    "alignments feeding the lexical table: gdfa | forward")
      ->check(CLI::IsMember({"gdfa", "forward"}))
      ->capture_default_str();
  train->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  add_threads(train, cfg);

  auto* align = app.add_subcommand("align", "write Pharaoh alignments");
  add_method(align, cfg, method);
  align->add_option("--bitext", cfg.bitext, "bitext file")->required();
  align->add_option("--model-dir", cfg.model_dir, "trained model directory");
  add_resources(align, cfg);
  align->add_option("--smoothing-eps", cfg.smoothing_eps, "additive smoothing for lsp")
      ->capture_default_str();
  align->add_option("--out", cfg.output, "alignment file (default stdout)");
  align->add_option("--confidences-out", cfg.confidences_out,
                    "per-target-position confidence file");
  add_threads(align, cfg);

  auto* project = app.add_subcommand("project", "project entity spans and mine pairs");
  project->add_option("--bitext", cfg.bitext, "bitext file")->required();
  project->add_option("--spans", cfg.spans, "span TSV");
  project->add_option("--tags", cfg.tags, "BIO tags, one line per sentence");
  project->add_option("--alignments", cfg.alignments, "Pharaoh alignment file")->required();
  project->add_option("--confidences", cfg.confidences, "confidence file from align");
  project->add_option("--min-coverage", cfg.projection.min_coverage)->capture_default_str();
  project->add_option("--max-span-len", cfg.projection.max_span_len)->capture_default_str();
  project->add_option("--min-count", cfg.min_count, "drop pairs seen fewer times")
      ->capture_default_str();
  project->add_option("--min-score", cfg.min_score, "drop pairs with lower mean confidence")
      ->capture_default_str();
  project->add_option("--out", cfg.output, "entity pair JSONL (default stdout)");
  project->add_option("--projections-out", cfg.projections_out, "per-span debug TSV");

  auto* eval = app.add_subcommand("eval", "fuzzy-F1 of mined pairs against a gold lexicon");
  eval->add_option("--mined", cfg.mined, "entity pair JSONL")->required();
  eval->add_option("--gold", cfg.gold, "gold lexicon TSV")->required();
  eval->add_option("--spans", cfg.spans, "span TSV for entity frequencies");
  eval->add_option("--out", cfg.output, "JSON report");
  eval->add_flag("--fuzzy-source-join", cfg.fuzzy_source_join,
                 "match mined sources to gold sources by LCS (F1 >= 0.8)");
  eval->add_flag("--casefold-eval", cfg.casefold_eval, "case-fold strings before scoring");

  auto* sample = app.add_subcommand("sample", "generate a synthetic bitext from trained tables");
  sample->add_option("--model-dir", cfg.model_dir, "directory with the three tables")->required();
  sample->add_option("--num-sentences", cfg.num_sentences)->capture_default_str();
  sample->add_option("--min-len", cfg.min_len)->capture_default_str();
  sample->add_option("--max-len", cfg.max_len)->capture_default_str();
  sample->add_option("--seed", cfg.seed)->capture_default_str();
  sample->add_option("--out", cfg.output, "bitext file (default stdout)");

  auto* stats = app.add_subcommand("stats", "corpus statistics");
  stats->add_option("--bitext", cfg.bitext, "bitext file")->required();
  stats->add_option("--spans", cfg.spans, "span TSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  cfg.method = *lspalign::parse_method(method);
  cfg.lexical_counts =
      lexical_counts == "gdfa" ? lspalign::LexicalCounts::kGdfa : lspalign::LexicalCounts::kForward;

  try {
    if (train->parsed()) {
      const auto s = lspalign::cmd_train(cfg);
      std::cerr << "trained on " << s.sentences << " sentences; config " << s.config_hash
                << '\n';
    } else if (align->parsed()) {
      const auto s = lspalign::cmd_align(cfg);
      spdlog::info("aligned {} sentences, {} links", s.sentences, s.links);
    } else if (project->parsed()) {
      const auto s = lspalign::cmd_project(cfg);
      std::cerr << "{\"sentences\": " << s.sentences << ", \"projected\": " << s.projected
                << ", \"rejected\": " << s.rejected << ", \"pairs\": " << s.pairs_written
                << "}\n";
    } else if (eval->parsed()) {
      const auto report = lspalign::cmd_eval(cfg);
      std::cout << report.to_table();
    } else if (sample->parsed()) {
      lspalign::cmd_sample(cfg);
    } else if (stats->parsed()) {
      std::cout << lspalign::cmd_stats(cfg) << '\n';
    }
  } catch (const lspalign::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return lspalign::is_data_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
