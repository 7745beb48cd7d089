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

#ifndef LSPALIGN_PIPELINE_H_
#define LSPALIGN_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lspalign/evaluation.h"
#include "lspalign/lexical_aligner.h"
#include "lspalign/projection.h"

namespace lspalign {

enum class Method { kLexical, kSemantic, kPhonetic, kLsp };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

// Which alignments feed the lexical translation table.
enum class LexicalCounts { kGdfa, kForward };

struct PipelineConfig {
  Method method = Method::kLsp;

  std::string bitext;
  std::string spans;
  std::string tags;
  std::string alignments;
  std::string confidences;
  std::string embeddings;
  std::string translit_src;
  std::string translit_tgt;
  std::string model_dir;
  std::string gold;
  std::string mined;
  std::string output;
  std::string confidences_out;
  std::string projections_out;

  TrainConfig train;
  ProjectionConfig projection;
  LexicalCounts lexical_counts = LexicalCounts::kGdfa;

  uint64_t seed = 0;
  int threads = 1;
  double smoothing_eps = 0.0;

  bool fuzzy_source_join = false;
  bool casefold_eval = false;

  // project filters
  std::size_t min_count = 1;
  double min_score = 0.0;

  // sample
  std::size_t num_sentences = 0;
  std::size_t min_len = 1;
  std::size_t max_len = 10;
};

// File names inside a model directory.
inline constexpr std::string_view kForwardModelFile = "lexical.forward.model";
inline constexpr std::string_view kReverseModelFile = "lexical.reverse.model";
inline constexpr std::string_view kManifestFile = "manifest.json";
std::string table_file_name(Mechanism k);

struct TrainSummary {
  std::size_t sentences = 0;
  std::vector<std::string> artifacts;
  std::string config_hash;
};

struct AlignSummary {
  std::size_t sentences = 0;
  std::size_t links = 0;
};

struct ProjectSummary {
  std::size_t sentences = 0;
  std::size_t projected = 0;
  std::size_t rejected = 0;
  std::size_t pairs_written = 0;
};

struct SampleSummary {
  std::size_t sentences = 0;
};

// Each command validates its inputs and throws Error; kConfig marks usage or
// configuration problems, every other code a data problem.
TrainSummary cmd_train(const PipelineConfig& cfg);
AlignSummary cmd_align(const PipelineConfig& cfg);
ProjectSummary cmd_project(const PipelineConfig& cfg);
EvaluationReport cmd_eval(const PipelineConfig& cfg);
SampleSummary cmd_sample(const PipelineConfig& cfg);
// Corpus statistics as a JSON document.
std::string cmd_stats(const PipelineConfig& cfg);

}  // namespace lspalign

#endif  // LSPALIGN_PIPELINE_H_
