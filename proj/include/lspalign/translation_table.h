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

#ifndef LSPALIGN_TRANSLATION_TABLE_H_
#define LSPALIGN_TRANSLATION_TABLE_H_

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lspalign/vocabulary.h"

namespace lspalign {

enum class Mechanism { kLexical = 0, kSemantic = 1, kPhonetic = 2 };

inline constexpr Mechanism kAllMechanisms[] = {Mechanism::kLexical, Mechanism::kSemantic,
                                               Mechanism::kPhonetic};

std::string_view mechanism_name(Mechanism k);
std::optional<Mechanism> parse_mechanism(std::string_view name);

// Conditional distributions theta(t | s) for one translation mechanism, stored
// as sorted sparse rows. The source vocabulary always carries the NULL word at
// kNullWord. Absent pairs have probability 0.
class TranslationTable {
 public:
  struct Entry {
    WordId target;
    double prob;
  };

  // `offsets` has source.size() + 1 entries; each row's entries are sorted by
  // target id.
  TranslationTable(Mechanism k, Vocabulary source, Vocabulary target,
                   std::vector<std::size_t> offsets, std::vector<Entry> entries);

  Mechanism mechanism() const { return mechanism_; }
  const Vocabulary& source_vocab() const { return source_; }
  const Vocabulary& target_vocab() const { return target_; }
  std::size_t num_rows() const { return offsets_.size() - 1; }
  std::size_t num_entries() const { return entries_.size(); }

  std::span<const Entry> row(WordId s) const;
  // Index into the entry array, or npos.
  std::size_t find(WordId s, WordId t) const;
  double prob(WordId s, WordId t) const;
  double prob(std::string_view s, std::string_view t) const;

  std::size_t row_begin(WordId s) const { return offsets_[s]; }
  std::size_t row_end(WordId s) const { return offsets_[s + 1]; }
  std::span<const Entry> entries() const { return entries_; }
  std::span<Entry> mutable_entries() { return entries_; }

  // Drops zero-probability entries.
  void prune_zeros();

  // TSV "mechanism<TAB>source<TAB>target<TAB>theta", rows ordered by source
  // then descending theta (then target). `header` lines are written first as
  // "#key<TAB>value".
  void dump(std::ostream& out, const std::map<std::string, std::string>& header = {}) const;
  // Reads a dump. Header lines are returned through `header` when given.
  static TranslationTable load(std::istream& in,
                               std::map<std::string, std::string>* header = nullptr);

 private:
  Mechanism mechanism_;
  Vocabulary source_;
  Vocabulary target_;
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

// Surface-keyed co-occurrence counts cnt(s, t). Merging is exact for integral
// counts, so the result does not depend on merge order.
class CountTable {
 public:
  void add(std::string_view source, std::string_view target, double count = 1.0);
  void add_null(std::string_view target, double count = 1.0) { add(kNullToken, target, count); }
  void merge(const CountTable& other);
  bool empty() const { return counts_.empty(); }
  double count(std::string_view source, std::string_view target) const;

  // theta(s,t) = cnt(s,t) / sum_t' cnt(s,t'). Vocabularies are built in sorted
  // order so the result is independent of insertion order.
  TranslationTable normalize(Mechanism k) const;

 private:
  std::unordered_map<std::string, std::unordered_map<std::string, double>> counts_;
};

}  // namespace lspalign

#endif  // LSPALIGN_TRANSLATION_TABLE_H_
