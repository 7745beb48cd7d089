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

#ifndef LSPALIGN_CORPUS_IO_H_
#define LSPALIGN_CORPUS_IO_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lspalign {

// A tokenized sentence pair. Tokens are non-empty, whitespace-free and NFC.
struct Bitext {
  std::size_t id = 0;
  std::vector<std::string> source;
  std::vector<std::string> target;
};

// One alignment link, 0-indexed.
struct Link {
  uint32_t source = 0;
  uint32_t target = 0;

  friend auto operator<=>(const Link&, const Link&) = default;
};

// Links sorted by (source, target) without duplicates. Use normalize() after
// building one by hand.
using Alignment = std::vector<Link>;

void normalize(Alignment& a);

// A typed token span [start, end) in one sentence.
struct EntitySpan {
  std::size_t sentence_id = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string entity_type;
  std::string surface;

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

// A mined (source, target, type) record with its corpus count and mean
// alignment confidence.
struct EntityPair {
  std::string source_surface;
  std::string target_surface;
  std::string entity_type;
  std::size_t count = 0;
  double score = 0.0;
};

// Word vectors in the plain text format: a "count dimension" header followed
// by one "token v1 ... vd" line per entry.
class EmbeddingTable {
 public:
  EmbeddingTable(std::size_t dimension,
                 std::vector<std::string> tokens,
                 std::vector<float> values);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return tokens_.size(); }

  // Empty optional for out-of-vocabulary tokens.
  std::optional<std::span<const float>> find(std::string_view token) const;

  // Number of duplicate entries dropped at load time.
  std::size_t duplicates_dropped() const { return duplicates_dropped_; }
  void set_duplicates_dropped(std::size_t n) { duplicates_dropped_ = n; }

 private:
  std::size_t dimension_;
  std::vector<std::string> tokens_;
  std::vector<float> values_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t duplicates_dropped_ = 0;
};

// Ordered grapheme rewrite rules. Sides are stored case-folded, NFC, as code
// points. Application is longest-match-first, left to right, one pass.
class TransliterationTable {
 public:
  struct Rule {
    std::u32string lhs;
    std::u32string rhs;
  };

  TransliterationTable() = default;
  explicit TransliterationTable(std::vector<Rule> rules);

  const std::vector<Rule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }

  // Indices into rules(), grouped by the first code point of the lhs and
  // ordered by descending lhs length, then by rule order.
  const std::vector<std::size_t>* candidates(char32_t first) const;

 private:
  std::vector<Rule> rules_;
  std::unordered_map<char32_t, std::vector<std::size_t>> by_first_;
};

// Gold cross-lingual lexicon: source entity -> distinct gold targets, in file
// order.
using GoldLexicon = std::map<std::string, std::vector<std::string>>;

// ---- bitext ----------------------------------------------------------------

inline constexpr std::string_view kBitextDelimiter = " ||| ";

Bitext parse_bitext_line(std::string_view line, std::size_t id);
std::string format_bitext(const Bitext& b);

// ---- BIO tags and spans ----------------------------------------------------

std::vector<EntitySpan> extract_entity_spans(std::span<const std::string> tags,
                                             const Bitext& sentence);

// Parses "sentence_id<TAB>start<TAB>end<TAB>type<TAB>surface". The surface is
// taken verbatim; verify it with check_span().
EntitySpan parse_span_line(std::string_view line);
std::string format_span(const EntitySpan& span);

// Throws kIndexOutOfRange or kSurfaceMismatch if the span does not fit the
// source side of `sentence`.
void check_span(const EntitySpan& span, const Bitext& sentence);

// ---- alignments -----------------------------------------------------------

Alignment parse_alignment(std::string_view line);
std::string format_alignment(const Alignment& a);

// ---- tables -----------------------------------------------------------------

EmbeddingTable parse_embeddings(std::istream& in);
TransliterationTable parse_transliteration(std::istream& in);
GoldLexicon parse_gold_lexicon(std::istream& in);

// ---- entity pairs (JSONL) --------------------------------------------------

std::string format_entity_pair(const EntityPair& pair);
EntityPair parse_entity_pair(std::string_view line);

// ---- helpers ---------------------------------------------------------------

// Reads one line without the trailing '\n' (and '\r'). Returns false at EOF.
bool read_line(std::istream& in, std::string& line);

// Splits on a single character, keeping empty fields.
std::vector<std::string_view> split_fields(std::string_view line, char sep);

}  // namespace lspalign

#endif  // LSPALIGN_CORPUS_IO_H_
