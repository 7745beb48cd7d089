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

#include "lspalign/pipeline.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <random>
#include <set>

#include "lspalign/corpus_io.h"
#include "lspalign/distance_align.h"
#include "lspalign/error.h"
#include "lspalign/lsp_model.h"
#include "lspalign/parallel.h"
#include "lspalign/unicode.h"

namespace lspalign {

namespace {

namespace fs = std::filesystem;

// Sentences read per chunk and per parallel work item.
constexpr std::size_t kChunkSize = 16384;
constexpr std::size_t kBlockSize = 256;

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(Errc::kConfig, message);
}

std::ifstream open_input(const std::string& path, std::string_view what) {
  require(!path.empty(), "missing " + std::string(what) + " path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open " + std::string(what) + " '" + path + "'");
  return in;
}

// stdout when `path` is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    if (auto parent = fs::path(path).parent_path(); !parent.empty()) {
      fs::create_directories(parent);
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw Error(Errc::kIo, "cannot write '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    stream().flush();
    if (file_) {
      file_->close();
      if (!*file_) throw Error(Errc::kIo, "write failed");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

// Reads a bitext file in chunks; parse errors carry file:line.
class BitextReader {
 public:
  explicit BitextReader(const std::string& path)
      : path_(path), in_(open_input(path, "bitext")) {}

  bool next_chunk(std::size_t max, std::vector<Bitext>& out) {
    out.clear();
    std::string line;
    while (out.size() < max && read_line(in_, line)) {
      try {
        out.push_back(parse_bitext_line(line, lines_));
      } catch (const Error& e) {
        throw e.with_context(path_, lines_ + 1);
      }
      ++lines_;
    }
    return !out.empty();
  }

  std::size_t lines() const { return lines_; }

 private:
  std::string path_;
  std::ifstream in_;
  std::size_t lines_ = 0;
};

// Runs fn(bitext, k) for each sentence of a chunk in parallel blocks.
template <typename Fn>
void for_each_parallel(const std::vector<Bitext>& chunk, int threads, Fn&& fn) {
  const std::size_t blocks = (chunk.size() + kBlockSize - 1) / kBlockSize;
  parallel_for(blocks, threads, [&](std::size_t blk) {
    const std::size_t end = std::min(chunk.size(), (blk + 1) * kBlockSize);
    for (std::size_t k = blk * kBlockSize; k < end; ++k) fn(chunk[k], k);
  });
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fnv1a_hex(std::string_view data) {
  uint64_t h = 1469598103934665603ULL;
  for (char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Resources {
  std::optional<EmbeddingTable> embeddings;
  TransliterationTable src_to_tgt;
  TransliterationTable tgt_to_src;
};

bool needs_embeddings(Method m) { return m == Method::kSemantic || m == Method::kLsp; }
bool needs_translit(Method m) { return m == Method::kPhonetic || m == Method::kLsp; }
bool needs_lexical(Method m) { return m == Method::kLexical || m == Method::kLsp; }

Resources load_resources(const PipelineConfig& cfg) {
  Resources r;
  if (needs_embeddings(cfg.method)) {
    require(!cfg.embeddings.empty(),
            "method " + std::string(method_name(cfg.method)) + " requires --embeddings");
    auto in = open_input(cfg.embeddings, "embeddings");
    try {
      r.embeddings = parse_embeddings(in);
    } catch (const Error& e) {
      throw e.with_context(cfg.embeddings, 0);
    }
  }
  if (needs_translit(cfg.method)) {
    require(!cfg.translit_src.empty() || !cfg.translit_tgt.empty(),
            "method " + std::string(method_name(cfg.method)) +
                " requires --translit-src and/or --translit-tgt");
    if (!cfg.translit_src.empty()) {
      auto in = open_input(cfg.translit_src, "transliteration table");
      try {
        r.src_to_tgt = parse_transliteration(in);
      } catch (const Error& e) {
        throw e.with_context(cfg.translit_src, 0);
      }
    }
    if (!cfg.translit_tgt.empty()) {
      auto in = open_input(cfg.translit_tgt, "transliteration table");
      try {
        r.tgt_to_src = parse_transliteration(in);
      } catch (const Error& e) {
        throw e.with_context(cfg.translit_tgt, 0);
      }
    }
  }
  return r;
}

void write_table(const TranslationTable& table, const fs::path& path) {
  Output out(path.string());
  table.dump(out.stream());
  out.close();
}

TranslationTable load_table(const fs::path& path) {
  auto in = open_input(path.string(), "translation table");
  try {
    return TranslationTable::load(in);
  } catch (const Error& e) {
    throw e.with_context(path.string(), 0);
  }
}

LexicalModel load_model(const fs::path& path) {
  auto in = open_input(path.string(), "lexical model");
  try {
    return load_lexical_model(in);
  } catch (const Error& e) {
    throw e.with_context(path.string(), 0);
  }
}

fs::path model_path(const PipelineConfig& cfg, std::string_view file) {
  require(!cfg.model_dir.empty(), "missing --model-dir");
  return fs::path(cfg.model_dir) / std::string(file);
}

LspModel load_lsp_model(const PipelineConfig& cfg) {
  std::vector<TranslationTable> tables;
  std::vector<std::string> missing;
  for (Mechanism k : kAllMechanisms) {
    const fs::path p = model_path(cfg, table_file_name(k));
    if (!fs::exists(p)) {
      missing.push_back(p.string());
      continue;
    }
    tables.push_back(load_table(p));
  }
  require(missing.empty(), "lsp needs all three translation tables; missing " +
                               join(missing, ", "));
  return LspModel(std::move(tables), cfg.smoothing_eps);
}

WordDistanceFn distance_for(Method m, const Resources& r) {
  if (m == Method::kSemantic) return make_semantic_distance(*r.embeddings);
  return make_phonetic_distance(r.src_to_tgt, r.tgt_to_src);
}

// Counts from greedy alignments under `dist`, one CountTable per block.
void count_greedy(const std::vector<Bitext>& chunk, const WordDistanceFn& dist, int threads,
                  CountTable& counts) {
  const std::size_t blocks = (chunk.size() + kBlockSize - 1) / kBlockSize;
  std::vector<CountTable> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t blk) {
    const std::size_t end = std::min(chunk.size(), (blk + 1) * kBlockSize);
    for (std::size_t k = blk * kBlockSize; k < end; ++k) {
      accumulate_counts(chunk[k], greedy_align(chunk[k], dist), partial[blk]);
    }
  });
  for (const auto& p : partial) counts.merge(p);
}

Alignment lexical_align(const Bitext& b, const LexicalModel& fwd, const LexicalModel& rev) {
  return gdfa_symmetrize(viterbi_align(b, fwd, Direction::kForward),
                         viterbi_align(b, rev, Direction::kReverse), b.source.size(),
                         b.target.size());
}

nlohmann::ordered_json config_json(const PipelineConfig& cfg) {
  nlohmann::ordered_json j;
  j["method"] = method_name(cfg.method);
  j["bitext"] = cfg.bitext;
  j["embeddings"] = cfg.embeddings;
  j["translit_src"] = cfg.translit_src;
  j["translit_tgt"] = cfg.translit_tgt;
  j["iterations"] = cfg.train.iterations;
  j["lambda"] = format_double(cfg.train.tension);
  j["p0"] = format_double(cfg.train.null_prob);
  j["lexical_counts"] = cfg.lexical_counts == LexicalCounts::kGdfa ? "gdfa" : "forward";
  j["seed"] = cfg.seed;
  return j;
}

std::map<std::size_t, std::vector<EntitySpan>> load_spans(const std::string& path) {
  std::map<std::size_t, std::vector<EntitySpan>> spans;
  auto in = open_input(path, "span file");
  std::string line;
  std::size_t lineno = 0;
  while (read_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      EntitySpan span = parse_span_line(line);
      spans[span.sentence_id].push_back(std::move(span));
    } catch (const Error& e) {
      throw e.with_context(path, lineno);
    }
  }
  for (auto& [id, list] : spans) {
    std::sort(list.begin(), list.end(),
              [](const EntitySpan& a, const EntitySpan& b) { return a.start < b.start; });
  }
  return spans;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kLexical: return "lexical";
    case Method::kSemantic: return "semantic";
    case Method::kPhonetic: return "phonetic";
    case Method::kLsp: return "lsp";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::kLexical, Method::kSemantic, Method::kPhonetic, Method::kLsp}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string table_file_name(Mechanism k) { return std::string(mechanism_name(k)) + ".tsv"; }

// ---- train -------------------------------------------------------------------

TrainSummary cmd_train(const PipelineConfig& cfg) {
  require(cfg.threads >= 1, "threads must be positive");
  require(!cfg.model_dir.empty(), "missing --model-dir");
  cfg.train.validate();
  const Resources res = load_resources(cfg);
  fs::create_directories(cfg.model_dir);
  TrainConfig train = cfg.train;
  train.shards = cfg.threads;

  const bool lexical = needs_lexical(cfg.method);
  const bool semantic = cfg.method == Method::kSemantic || cfg.method == Method::kLsp;
  const bool phonetic = cfg.method == Method::kPhonetic || cfg.method == Method::kLsp;

  IdCorpus forward;
  IdCorpus reverse;
  CountTable semantic_counts;
  CountTable phonetic_counts;
  const WordDistanceFn sem = semantic ? distance_for(Method::kSemantic, res) : WordDistanceFn{};
  const WordDistanceFn phon = phonetic ? distance_for(Method::kPhonetic, res) : WordDistanceFn{};

  BitextReader reader(cfg.bitext);
  std::vector<Bitext> chunk;
  while (reader.next_chunk(kChunkSize, chunk)) {
    if (lexical) {
      for (const Bitext& b : chunk) {
        forward.add(b.source, b.target);
        reverse.add(b.target, b.source);
      }
    }
    if (semantic) count_greedy(chunk, sem, cfg.threads, semantic_counts);
    if (phonetic) count_greedy(chunk, phon, cfg.threads, phonetic_counts);
  }
  const std::size_t sentences = reader.lines();
  if (sentences == 0) {
    throw Error(Errc::kEmptyCorpus, "cannot train on an empty corpus").with_context(cfg.bitext, 0);
  }

  TrainSummary summary;
  summary.sentences = sentences;
  const fs::path dir(cfg.model_dir);
  if (lexical) {
    spdlog::info("training forward lexical model on {} sentences", sentences);
    const LexicalModel fwd = em_train(forward, train);
    forward = IdCorpus{};
    spdlog::info("training reverse lexical model");
    const LexicalModel rev = em_train(reverse, train);
    reverse = IdCorpus{};
    for (const auto& [model, file] : {std::pair{&fwd, kForwardModelFile},
                                      std::pair{&rev, kReverseModelFile}}) {
      Output out((dir / std::string(file)).string());
      save_lexical_model(out.stream(), *model);
      out.close();
      summary.artifacts.emplace_back(file);
    }

    CountTable lexical_counts;
    BitextReader second(cfg.bitext);
    while (second.next_chunk(kChunkSize, chunk)) {
      const std::size_t blocks = (chunk.size() + kBlockSize - 1) / kBlockSize;
      std::vector<CountTable> partial(blocks);
      parallel_for(blocks, cfg.threads, [&](std::size_t blk) {
        const std::size_t end = std::min(chunk.size(), (blk + 1) * kBlockSize);
        for (std::size_t k = blk * kBlockSize; k < end; ++k) {
          const Alignment a = cfg.lexical_counts == LexicalCounts::kGdfa
                                  ? lexical_align(chunk[k], fwd, rev)
                                  : viterbi_align(chunk[k], fwd, Direction::kForward);
          accumulate_counts(chunk[k], a, partial[blk]);
        }
      });
      for (const auto& p : partial) lexical_counts.merge(p);
    }
    write_table(lexical_counts.normalize(Mechanism::kLexical),
                dir / table_file_name(Mechanism::kLexical));
    summary.artifacts.push_back(table_file_name(Mechanism::kLexical));
  }
  if (semantic) {
    write_table(semantic_counts.normalize(Mechanism::kSemantic),
                dir / table_file_name(Mechanism::kSemantic));
    summary.artifacts.push_back(table_file_name(Mechanism::kSemantic));
  }
  if (phonetic) {
    write_table(phonetic_counts.normalize(Mechanism::kPhonetic),
                dir / table_file_name(Mechanism::kPhonetic));
    summary.artifacts.push_back(table_file_name(Mechanism::kPhonetic));
  }

  const nlohmann::ordered_json config = config_json(cfg);
  summary.config_hash = fnv1a_hex(config.dump());
  nlohmann::ordered_json manifest;
  manifest["command"] = "train";
  manifest["sentences"] = sentences;
  manifest["config_hash"] = summary.config_hash;
  manifest["config"] = config;
  manifest["artifacts"] = summary.artifacts;
  Output out((dir / std::string(kManifestFile)).string());
  out.stream() << manifest.dump(2) << '\n';
  out.close();
  return summary;
}

// ---- align -------------------------------------------------------------------

AlignSummary cmd_align(const PipelineConfig& cfg) {
  require(cfg.threads >= 1, "threads must be positive");
  std::optional<LexicalModel> fwd;
  std::optional<LexicalModel> rev;
  std::optional<LspModel> lsp;
  Resources res;
  WordDistanceFn dist;
  switch (cfg.method) {
    case Method::kLexical:
      fwd = load_model(model_path(cfg, kForwardModelFile));
      rev = load_model(model_path(cfg, kReverseModelFile));
      break;
    case Method::kLsp:
      lsp = load_lsp_model(cfg);
      break;
    case Method::kSemantic:
    case Method::kPhonetic:
      res = load_resources(cfg);
      dist = distance_for(cfg.method, res);
      break;
  }
  std::vector<const Vocabulary*> known;
  if (fwd) known.push_back(&fwd->translation.source_vocab());
  if (lsp) {
    for (Mechanism k : kAllMechanisms) known.push_back(&lsp->table(k).source_vocab());
  }

  BitextReader reader(cfg.bitext);
  Output out(cfg.output);
  std::optional<Output> conf_out;
  if (!cfg.confidences_out.empty()) conf_out.emplace(cfg.confidences_out);

  AlignSummary summary;
  std::vector<Bitext> chunk;
  std::vector<std::string> lines;
  std::vector<std::string> conf_lines;
  bool checked = false;
  while (reader.next_chunk(kChunkSize, chunk)) {
    if (!checked && !known.empty()) {
      // A model that knows none of the first chunk's source words was trained
      // on something else.
      bool any = false;
      for (const Bitext& b : chunk) {
        for (const auto& w : b.source) {
          for (const Vocabulary* v : known) any = any || v->find(w) != kNoWord;
        }
      }
      if (!any) {
        throw Error(Errc::kModelMismatch,
                    "no source word of the bitext is known to the model in '" + cfg.model_dir +
                        "'")
            .with_context(cfg.bitext, 0);
      }
      checked = true;
    }
    lines.assign(chunk.size(), {});
    conf_lines.assign(conf_out ? chunk.size() : 0, {});
    std::vector<std::size_t> link_counts(chunk.size());
    for_each_parallel(chunk, cfg.threads, [&](const Bitext& b, std::size_t k) {
      Alignment a;
      std::vector<double> confidence;
      if (lsp) {
        ScoredAlignment scored = posterior_align_scored(b, *lsp);
        a = std::move(scored.links);
        confidence = std::move(scored.confidence);
      } else {
        a = fwd ? lexical_align(b, *fwd, *rev) : greedy_align(b, dist);
        if (conf_out) {
          confidence.assign(b.target.size(), 0.0);
          for (const Link& l : a) confidence[l.target] = 1.0;
        }
      }
      link_counts[k] = a.size();
      lines[k] = format_alignment(a);
      if (conf_out) {
        std::string& c = conf_lines[k];
        char buf[32];
        for (std::size_t j = 0; j < confidence.size(); ++j) {
          std::snprintf(buf, sizeof(buf), "%.9g", confidence[j]);
          if (j > 0) c.push_back(' ');
          c += buf;
        }
      }
    });
    for (std::size_t k = 0; k < chunk.size(); ++k) {
      out.stream() << lines[k] << '\n';
      if (conf_out) conf_out->stream() << conf_lines[k] << '\n';
      summary.links += link_counts[k];
    }
    summary.sentences += chunk.size();
  }
  out.close();
  if (conf_out) conf_out->close();
  return summary;
}

// ---- project -----------------------------------------------------------------

ProjectSummary cmd_project(const PipelineConfig& cfg) {
  cfg.projection.validate();
  require(!cfg.spans.empty() || !cfg.tags.empty(), "project requires --spans or --tags");
  require(cfg.spans.empty() || cfg.tags.empty(), "use either --spans or --tags, not both");
  require(!cfg.alignments.empty(), "project requires --alignments");

  std::map<std::size_t, std::vector<EntitySpan>> spans;
  std::ifstream tags_in;
  if (!cfg.spans.empty()) {
    spans = load_spans(cfg.spans);
  } else {
    tags_in = open_input(cfg.tags, "tag file");
  }
  auto align_in = open_input(cfg.alignments, "alignment file");
  std::ifstream conf_in;
  if (!cfg.confidences.empty()) conf_in = open_input(cfg.confidences, "confidence file");
  std::optional<Output> debug;
  if (!cfg.projections_out.empty()) debug.emplace(cfg.projections_out);

  BitextReader reader(cfg.bitext);
  PairAggregator agg;
  ProjectSummary summary;
  std::vector<Bitext> chunk;
  std::string line;
  std::vector<EntitySpan> tag_spans;
  while (reader.next_chunk(kChunkSize, chunk)) {
    for (const Bitext& b : chunk) {
      const std::size_t lineno = b.id + 1;
      if (!read_line(align_in, line)) {
        throw Error(Errc::kLengthMismatch,
                    "alignment file has no line for sentence " + std::to_string(b.id))
            .with_context(cfg.alignments, lineno);
      }
      Alignment a;
      try {
        a = parse_alignment(line);
      } catch (const Error& e) {
        throw e.with_context(cfg.alignments, lineno);
      }
      std::vector<double> confidence;
      if (conf_in.is_open()) {
        if (!read_line(conf_in, line)) {
          throw Error(Errc::kLengthMismatch,
                      "confidence file has no line for sentence " + std::to_string(b.id))
              .with_context(cfg.confidences, lineno);
        }
        for (const auto& v : split_whitespace(line)) {
          char* end = nullptr;
          confidence.push_back(std::strtod(v.c_str(), &end));
          if (end != v.c_str() + v.size()) {
            throw Error(Errc::kNonNumericValue, "bad confidence '" + v + "'")
                .with_context(cfg.confidences, lineno);
          }
        }
        if (confidence.size() != b.target.size()) {
          throw Error(Errc::kLengthMismatch,
                      "sentence " + std::to_string(b.id) + " has " +
                          std::to_string(b.target.size()) + " target tokens but " +
                          std::to_string(confidence.size()) + " confidences")
              .with_context(cfg.confidences, lineno);
        }
      }
      std::span<const EntitySpan> sentence_spans;
      if (tags_in.is_open()) {
        if (!read_line(tags_in, line)) {
          throw Error(Errc::kLengthMismatch,
                      "tag file has no line for sentence " + std::to_string(b.id))
              .with_context(cfg.tags, lineno);
        }
        try {
          const auto tags = split_whitespace(line);
          tag_spans = extract_entity_spans(tags, b);
        } catch (const Error& e) {
          throw e.with_context(cfg.tags, lineno);
        }
        sentence_spans = tag_spans;
      } else if (auto it = spans.find(b.id); it != spans.end()) {
        sentence_spans = it->second;
      }
      ProjectionCounts counts;
      try {
        PairAggregator local;
        counts = project_sentence(b, sentence_spans, a, confidence, cfg.projection, local);
        agg.merge(local);
      } catch (const Error& e) {
        throw Error(e.code(), std::string(e.what()) + " (sentence " + std::to_string(b.id) + ")")
            .with_context(cfg.alignments, lineno);
      }
      summary.projected += counts.projected;
      summary.rejected += counts.rejected;
      if (debug) {
        for (const EntitySpan& span : sentence_spans) {
          auto p = project_span(span, a, b.target.size(), cfg.projection);
          debug->stream() << b.id << '\t' << span.start << '\t' << span.end << '\t'
                          << span.entity_type << '\t' << span.surface << '\t';
          if (p) {
            debug->stream() << p->start << '\t' << p->end << '\t'
                            << join(std::span(b.target).subspan(p->start, p->end - p->start));
          } else {
            debug->stream() << "-\t-\t-";
          }
          debug->stream() << '\n';
        }
      }
    }
  }
  summary.sentences = reader.lines();
  if (read_line(align_in, line)) {
    throw Error(Errc::kLengthMismatch, "alignment file has more lines than the bitext")
        .with_context(cfg.alignments, summary.sentences + 1);
  }
  if (!spans.empty() && spans.rbegin()->first >= summary.sentences) {
    throw Error(Errc::kUnknownSentence,
                "span file references sentence_id " + std::to_string(spans.rbegin()->first) +
                    " but the bitext has " + std::to_string(summary.sentences) + " sentences")
        .with_context(cfg.spans, 0);
  }

  Output out(cfg.output);
  for (const EntityPair& pair : agg.pairs()) {
    if (pair.count < cfg.min_count || pair.score < cfg.min_score) continue;
    out.stream() << format_entity_pair(pair) << '\n';
    ++summary.pairs_written;
  }
  out.close();
  if (debug) debug->close();
  return summary;
}

// ---- eval --------------------------------------------------------------------

EvaluationReport cmd_eval(const PipelineConfig& cfg) {
  require(!cfg.mined.empty(), "eval requires --mined");
  require(!cfg.gold.empty(), "eval requires --gold");
  std::vector<EntityPair> mined;
  {
    auto in = open_input(cfg.mined, "mined pairs");
    std::string line;
    std::size_t lineno = 0;
    while (read_line(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        mined.push_back(parse_entity_pair(line));
      } catch (const Error& e) {
        throw e.with_context(cfg.mined, lineno);
      }
    }
  }
  GoldLexicon gold;
  {
    auto in = open_input(cfg.gold, "gold lexicon");
    try {
      gold = parse_gold_lexicon(in);
    } catch (const Error& e) {
      throw e.with_context(cfg.gold, 0);
    }
  }
  FrequencyMap frequency;
  if (!cfg.spans.empty()) {
    for (const auto& [id, list] : load_spans(cfg.spans)) {
      for (const EntitySpan& s : list) ++frequency[s.surface];
    }
  } else {
    for (const EntityPair& p : mined) frequency[p.source_surface] += p.count;
  }
  EvalOptions options;
  options.fuzzy_source_join = cfg.fuzzy_source_join;
  options.casefold = cfg.casefold_eval;
  EvaluationReport report = evaluate_lexicon(mined, gold, frequency, options);
  if (!cfg.output.empty()) {
    Output out(cfg.output);
    out.stream() << report.to_json() << '\n';
    out.close();
  }
  return report;
}

// ---- sample ------------------------------------------------------------------

SampleSummary cmd_sample(const PipelineConfig& cfg) {
  require(cfg.min_len >= 1 && cfg.min_len <= cfg.max_len,
          "sentence lengths need 1 <= --min-len <= --max-len");
  const LspModel model = load_lsp_model(cfg);
  std::set<std::string> pool_set;
  for (Mechanism k : kAllMechanisms) {
    const Vocabulary& v = model.table(k).source_vocab();
    for (WordId s = 1; s < v.size(); ++s) {
      if (!model.table(k).row(s).empty()) pool_set.insert(v.word(s));
    }
  }
  if (pool_set.empty()) throw Error(Errc::kEmptyFile, "translation tables have no source words");
  const std::vector<std::string> pool(pool_set.begin(), pool_set.end());

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> draw_len(cfg.min_len, cfg.max_len);
  std::uniform_int_distribution<std::size_t> draw_word(0, pool.size() - 1);
  Output out(cfg.output);
  for (std::size_t s = 0; s < cfg.num_sentences; ++s) {
    std::vector<std::string> source(draw_len(rng));
    for (auto& w : source) w = pool[draw_word(rng)];
    const std::size_t n = draw_len(rng);
    const uint64_t sentence_seed = rng();
    const auto target = sample_translation(source, model, n, sentence_seed);
    out.stream() << join(source) << kBitextDelimiter << join(target) << '\n';
  }
  out.close();
  return {cfg.num_sentences};
}

// ---- stats -------------------------------------------------------------------

std::string cmd_stats(const PipelineConfig& cfg) {
  BitextReader reader(cfg.bitext);
  std::size_t source_tokens = 0;
  std::size_t target_tokens = 0;
  std::set<std::string> source_types;
  std::set<std::string> target_types;
  std::size_t max_source = 0;
  std::size_t max_target = 0;
  std::vector<Bitext> chunk;
  while (reader.next_chunk(kChunkSize, chunk)) {
    for (const Bitext& b : chunk) {
      source_tokens += b.source.size();
      target_tokens += b.target.size();
      max_source = std::max(max_source, b.source.size());
      max_target = std::max(max_target, b.target.size());
      source_types.insert(b.source.begin(), b.source.end());
      target_types.insert(b.target.begin(), b.target.end());
    }
  }
  const std::size_t n = reader.lines();
  nlohmann::ordered_json j;
  j["sentences"] = n;
  j["source_tokens"] = source_tokens;
  j["target_tokens"] = target_tokens;
  j["source_types"] = source_types.size();
  j["target_types"] = target_types.size();
  j["mean_source_length"] = n ? static_cast<double>(source_tokens) / static_cast<double>(n) : 0.0;
  j["mean_target_length"] = n ? static_cast<double>(target_tokens) / static_cast<double>(n) : 0.0;
  j["max_source_length"] = max_source;
  j["max_target_length"] = max_target;
  if (!cfg.spans.empty()) {
    std::map<std::string, std::size_t> by_type;
    std::size_t total = 0;
    for (const auto& [id, list] : load_spans(cfg.spans)) {
      for (const EntitySpan& s : list) {
        ++by_type[s.entity_type];
        ++total;
      }
    }
    j["entity_spans"] = total;
    j["entity_spans_by_type"] = by_type;
  }
  return j.dump(2);
}

}  // namespace lspalign
