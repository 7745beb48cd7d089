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

#include "lspalign/corpus_io.h"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <nlohmann/json.hpp>

#include "lspalign/error.h"
#include "lspalign/unicode.h"

namespace lspalign {

namespace {

std::vector<std::string> tokenize_side(std::string_view side) {
  std::vector<std::string> tokens = split_whitespace(side);
  for (auto& t : tokens) t = nfc(t);
  return tokens;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

std::size_t parse_index(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  if (text.empty() || !parse_number(text, value)) {
    throw Error(Errc::kMalformedRecord,
                "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

void normalize(Alignment& a) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
}

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// ---- bitext ----------------------------------------------------------------

Bitext parse_bitext_line(std::string_view line, std::size_t id) {
  if (!is_valid_utf8(line)) throw Error(Errc::kInvalidEncoding, "line is not valid UTF-8");
  const std::size_t pos = line.find(kBitextDelimiter);
  if (pos == std::string_view::npos) {
    throw Error(Errc::kMissingDelimiter, "expected 'source ||| target'");
  }
  Bitext b;
  b.id = id;
  b.source = tokenize_side(line.substr(0, pos));
  b.target = tokenize_side(line.substr(pos + kBitextDelimiter.size()));
  if (b.source.empty()) throw Error(Errc::kEmptySide, "source side has no tokens");
  if (b.target.empty()) throw Error(Errc::kEmptySide, "target side has no tokens");
  return b;
}

std::string format_bitext(const Bitext& b) {
  return join(b.source) + std::string(kBitextDelimiter) + join(b.target);
}

// ---- BIO tags and spans ----------------------------------------------------

std::vector<EntitySpan> extract_entity_spans(std::span<const std::string> tags,
                                             const Bitext& sentence) {
  if (tags.size() != sentence.source.size()) {
    throw Error(Errc::kLengthMismatch,
                std::to_string(tags.size()) + " tags for " +
                    std::to_string(sentence.source.size()) + " tokens");
  }
  std::vector<EntitySpan> spans;
  std::optional<EntitySpan> open;
  auto close = [&](std::size_t end) {
    if (!open) return;
    open->end = end;
    open->surface = join(std::span(sentence.source).subspan(open->start, end - open->start));
    spans.push_back(std::move(*open));
    open.reset();
  };
  for (std::size_t k = 0; k < tags.size(); ++k) {
    const std::string& tag = tags[k];
    if (tag == "O") {
      close(k);
      continue;
    }
    if (tag.size() < 3 || (tag[0] != 'B' && tag[0] != 'I') || tag[1] != '-') {
      throw Error(Errc::kUnknownLabel, "malformed BIO label '" + tag + "'");
    }
    const std::string type = tag.substr(2);
    // An I-X continues only an open X span; otherwise it starts one.
    if (tag[0] == 'I' && open && open->entity_type == type) continue;
    close(k);
    open = EntitySpan{sentence.id, k, k, type, {}};
  }
  close(tags.size());
  return spans;
}

EntitySpan parse_span_line(std::string_view line) {
  const auto fields = split_fields(line, '\t');
  if (fields.size() != 5) {
    throw Error(Errc::kMalformedRecord,
                "span line needs 5 tab-separated fields, got " + std::to_string(fields.size()));
  }
  EntitySpan span;
  span.sentence_id = parse_index(fields[0], "sentence id");
  span.start = parse_index(fields[1], "span start");
  span.end = parse_index(fields[2], "span end");
  span.entity_type = std::string(fields[3]);
  span.surface = nfc(fields[4]);
  if (span.entity_type.empty()) throw Error(Errc::kMalformedRecord, "empty entity type");
  if (span.start >= span.end) {
    throw Error(Errc::kIndexOutOfRange, "span start must be below span end");
  }
  return span;
}

std::string format_span(const EntitySpan& span) {
  return std::to_string(span.sentence_id) + '\t' + std::to_string(span.start) + '\t' +
         std::to_string(span.end) + '\t' + span.entity_type + '\t' + span.surface;
}

void check_span(const EntitySpan& span, const Bitext& sentence) {
  if (span.start >= span.end || span.end > sentence.source.size()) {
    throw Error(Errc::kIndexOutOfRange,
                "span [" + std::to_string(span.start) + "," + std::to_string(span.end) +
                    ") does not fit sentence " + std::to_string(sentence.id) + " of length " +
                    std::to_string(sentence.source.size()));
  }
  const std::string expected =
      join(std::span(sentence.source).subspan(span.start, span.end - span.start));
  if (expected != span.surface) {
    throw Error(Errc::kSurfaceMismatch, "span surface '" + span.surface +
                                            "' does not match tokens '" + expected + "'");
  }
}

// ---- alignments -----------------------------------------------------------

Alignment parse_alignment(std::string_view line) {
  Alignment a;
  for (const std::string& item : split_whitespace(line)) {
    const std::size_t dash = item.find('-');
    uint32_t i = 0;
    uint32_t j = 0;
    if (dash == std::string::npos || dash == 0 ||
        !parse_number(std::string_view(item).substr(0, dash), i) ||
        !parse_number(std::string_view(item).substr(dash + 1), j)) {
      throw Error(Errc::kMalformedLink, "bad link '" + item + "'");
    }
    a.push_back({i, j});
  }
  normalize(a);
  return a;
}

std::string format_alignment(const Alignment& a) {
  std::string out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k > 0) out.push_back(' ');
    out += std::to_string(a[k].source);
    out.push_back('-');
    out += std::to_string(a[k].target);
  }
  return out;
}

// ---- tables -----------------------------------------------------------------

EmbeddingTable::EmbeddingTable(std::size_t dimension,
                               std::vector<std::string> tokens,
                               std::vector<float> values)
    : dimension_(dimension), tokens_(std::move(tokens)), values_(std::move(values)) {
  if (dimension_ == 0) throw Error(Errc::kDimensionMismatch, "dimension must be positive");
  if (tokens_.empty()) throw Error(Errc::kEmptyFile, "embedding table has no entries");
  if (values_.size() != tokens_.size() * dimension_) {
    throw Error(Errc::kDimensionMismatch, "value count does not match tokens x dimension");
  }
  for (std::size_t k = 0; k < tokens_.size(); ++k) index_.emplace(tokens_[k], k);
}

std::optional<std::span<const float>> EmbeddingTable::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return std::span<const float>(values_).subspan(it->second * dimension_, dimension_);
}

EmbeddingTable parse_embeddings(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  // Skip leading blank lines.
  while (read_line(in, line)) {
    ++lineno;
    if (!split_whitespace(line).empty()) break;
    line.clear();
  }
  const auto header = split_whitespace(line);
  if (header.empty()) throw Error(Errc::kEmptyFile, "embedding file is empty");
  std::size_t count = 0;
  std::size_t dim = 0;
  if (header.size() != 2 || !parse_number(std::string_view(header[0]), count) ||
      !parse_number(std::string_view(header[1]), dim)) {
    throw Error(Errc::kNonNumericValue, "header must be 'count dimension'")
        .with_context("embeddings", lineno);
  }
  if (dim == 0) {
    throw Error(Errc::kDimensionMismatch, "dimension must be positive")
        .with_context("embeddings", lineno);
  }
  std::vector<std::string> tokens;
  std::vector<float> values;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t duplicates = 0;
  tokens.reserve(count);
  values.reserve(count * dim);
  while (read_line(in, line)) {
    ++lineno;
    auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (fields.size() != dim + 1) {
      throw Error(Errc::kDimensionMismatch,
                  "expected " + std::to_string(dim) + " values, got " +
                      std::to_string(fields.size() - 1))
          .with_context("embeddings", lineno);
    }
    std::vector<float> row(dim);
    for (std::size_t d = 0; d < dim; ++d) {
      // from_chars for floating point is available in libstdc++ 11.
      if (!parse_number(std::string_view(fields[d + 1]), row[d]) || !std::isfinite(row[d])) {
        throw Error(Errc::kNonNumericValue, "bad value '" + fields[d + 1] + "'")
            .with_context("embeddings", lineno);
      }
    }
    std::string token = nfc(fields[0]);
    if (!seen.emplace(token, tokens.size()).second) {
      ++duplicates;
      continue;
    }
    tokens.push_back(std::move(token));
    values.insert(values.end(), row.begin(), row.end());
  }
  if (tokens.empty()) throw Error(Errc::kEmptyFile, "embedding file has no vectors");
  if (duplicates > 0) {
    spdlog::warn("embeddings: dropped {} duplicate token(s), first occurrence kept", duplicates);
  }
  EmbeddingTable table(dim, std::move(tokens), std::move(values));
  table.set_duplicates_dropped(duplicates);
  return table;
}

TransliterationTable::TransliterationTable(std::vector<Rule> rules) : rules_(std::move(rules)) {
  for (std::size_t k = 0; k < rules_.size(); ++k) {
    if (rules_[k].lhs.empty()) {
      throw Error(Errc::kMalformedRecord, "transliteration rule with empty left-hand side");
    }
    by_first_[rules_[k].lhs.front()].push_back(k);
  }
  for (auto& [first, idx] : by_first_) {
    std::stable_sort(idx.begin(), idx.end(), [this](std::size_t a, std::size_t b) {
      return rules_[a].lhs.size() > rules_[b].lhs.size();
    });
  }
}

const std::vector<std::size_t>* TransliterationTable::candidates(char32_t first) const {
  auto it = by_first_.find(first);
  return it == by_first_.end() ? nullptr : &it->second;
}

TransliterationTable parse_transliteration(std::istream& in) {
  std::vector<TransliterationTable::Rule> rules;
  std::string line;
  std::size_t lineno = 0;
  while (read_line(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_fields(line, '\t');
    if (fields.size() != 2 || fields[0].empty()) {
      throw Error(Errc::kMalformedRecord, "expected 'lhs<TAB>rhs'")
          .with_context("transliteration", lineno);
    }
    try {
      rules.push_back({to_u32(casefold(nfc(fields[0]))), to_u32(casefold(nfc(fields[1])))});
    } catch (const Error& e) {
      throw e.with_context("transliteration", lineno);
    }
  }
  return TransliterationTable(std::move(rules));
}

GoldLexicon parse_gold_lexicon(std::istream& in) {
  GoldLexicon gold;
  std::string line;
  std::size_t lineno = 0;
  while (read_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_fields(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw Error(Errc::kMalformedRecord, "expected 'source_entity<TAB>target_entity'")
          .with_context("gold lexicon", lineno);
    }
    if (!is_valid_utf8(line)) {
      throw Error(Errc::kInvalidEncoding, "line is not valid UTF-8")
          .with_context("gold lexicon", lineno);
    }
    auto& targets = gold[nfc(fields[0])];
    std::string target = nfc(fields[1]);
    if (std::find(targets.begin(), targets.end(), target) == targets.end()) {
      targets.push_back(std::move(target));
    }
  }
  return gold;
}

// ---- entity pairs ------------------------------------------------------------

std::string format_entity_pair(const EntityPair& pair) {
  nlohmann::ordered_json j;
  j["src"] = pair.source_surface;
  j["tgt"] = pair.target_surface;
  j["type"] = pair.entity_type;
  j["count"] = pair.count;
  j["score"] = pair.score;
  return j.dump();
}

EntityPair parse_entity_pair(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kMalformedRecord, std::string("bad JSON: ") + e.what());
  }
  try {
    EntityPair pair;
    pair.source_surface = nfc(j.at("src").get<std::string>());
    pair.target_surface = nfc(j.at("tgt").get<std::string>());
    pair.entity_type = j.at("type").get<std::string>();
    pair.count = j.at("count").get<std::size_t>();
    pair.score = j.at("score").get<double>();
    if (pair.source_surface.empty() || pair.target_surface.empty() || pair.count == 0) {
      throw Error(Errc::kMalformedRecord, "entity pair needs non-empty surfaces and count >= 1");
    }
    return pair;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kMalformedRecord, std::string("bad entity pair: ") + e.what());
  }
}

}  // namespace lspalign
