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

#include "lspalign/translation_table.h"

#include <algorithm>
#include <cstdio>
#include <string>

#include "lspalign/corpus_io.h"
#include "lspalign/error.h"

namespace lspalign {

std::string_view mechanism_name(Mechanism k) {
  switch (k) {
    case Mechanism::kLexical: return "lexical";
    case Mechanism::kSemantic: return "semantic";
    case Mechanism::kPhonetic: return "phonetic";
  }
  return "unknown";
}

std::optional<Mechanism> parse_mechanism(std::string_view name) {
  for (Mechanism k : kAllMechanisms) {
    if (mechanism_name(k) == name) return k;
  }
  return std::nullopt;
}

TranslationTable::TranslationTable(Mechanism k, Vocabulary source, Vocabulary target,
                                   std::vector<std::size_t> offsets,
                                   std::vector<Entry> entries)
    : mechanism_(k),
      source_(std::move(source)),
      target_(std::move(target)),
      offsets_(std::move(offsets)),
      entries_(std::move(entries)) {
  if (!source_.has_null()) {
    throw Error(Errc::kConfig, "translation table source vocabulary needs the NULL word");
  }
  if (offsets_.size() != source_.size() + 1 || offsets_.back() != entries_.size()) {
    throw Error(Errc::kConfig, "translation table offsets do not match its rows");
  }
}

std::span<const TranslationTable::Entry> TranslationTable::row(WordId s) const {
  if (s >= num_rows()) return {};
  return std::span<const Entry>(entries_).subspan(offsets_[s], offsets_[s + 1] - offsets_[s]);
}

std::size_t TranslationTable::find(WordId s, WordId t) const {
  if (s >= num_rows() || t == kNoWord) return std::string::npos;
  const auto first = entries_.begin() + static_cast<std::ptrdiff_t>(offsets_[s]);
  const auto last = entries_.begin() + static_cast<std::ptrdiff_t>(offsets_[s + 1]);
  auto it = std::lower_bound(first, last, t,
                             [](const Entry& e, WordId id) { return e.target < id; });
  if (it == last || it->target != t) return std::string::npos;
  return static_cast<std::size_t>(it - entries_.begin());
}

double TranslationTable::prob(WordId s, WordId t) const {
  const std::size_t k = find(s, t);
  return k == std::string::npos ? 0.0 : entries_[k].prob;
}

double TranslationTable::prob(std::string_view s, std::string_view t) const {
  return prob(source_.find(s), target_.find(t));
}

void TranslationTable::prune_zeros() {
  std::vector<std::size_t> offsets(1, 0);
  std::vector<Entry> kept;
  kept.reserve(entries_.size());
  for (std::size_t s = 0; s < num_rows(); ++s) {
    for (std::size_t k = offsets_[s]; k < offsets_[s + 1]; ++k) {
      if (entries_[k].prob > 0.0) kept.push_back(entries_[k]);
    }
    offsets.push_back(kept.size());
  }
  offsets_ = std::move(offsets);
  entries_ = std::move(kept);
}

void TranslationTable::dump(std::ostream& out,
                            const std::map<std::string, std::string>& header) const {
  for (const auto& [key, value] : header) out << '#' << key << '\t' << value << '\n';
  std::vector<WordId> sources(num_rows());
  for (WordId s = 0; s < sources.size(); ++s) sources[s] = s;
  std::sort(sources.begin(), sources.end(),
            [this](WordId a, WordId b) { return source_.word(a) < source_.word(b); });
  const std::string_view name = mechanism_name(mechanism_);
  char buf[32];
  std::vector<Entry> sorted;
  for (WordId s : sources) {
    auto r = row(s);
    sorted.assign(r.begin(), r.end());
    std::sort(sorted.begin(), sorted.end(), [this](const Entry& a, const Entry& b) {
      if (a.prob != b.prob) return a.prob > b.prob;
      return target_.word(a.target) < target_.word(b.target);
    });
    for (const Entry& e : sorted) {
      if (e.prob <= 0.0) continue;
      std::snprintf(buf, sizeof(buf), "%.17g", e.prob);
      out << name << '\t' << source_.word(s) << '\t' << target_.word(e.target) << '\t' << buf
          << '\n';
    }
  }
}

TranslationTable TranslationTable::load(std::istream& in,
                                        std::map<std::string, std::string>* header) {
  std::optional<Mechanism> mechanism;
  CountTable probs;
  std::string line;
  std::size_t lineno = 0;
  while (read_line(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto fields = split_fields(std::string_view(line).substr(1), '\t');
      if (header && fields.size() == 2) (*header)[std::string(fields[0])] = fields[1];
      continue;
    }
    const auto fields = split_fields(line, '\t');
    if (fields.size() != 4) {
      throw Error(Errc::kMalformedRecord, "table line needs 4 tab-separated fields")
          .with_context("translation table", lineno);
    }
    auto k = parse_mechanism(fields[0]);
    if (!k) {
      throw Error(Errc::kMalformedRecord, "unknown mechanism '" + std::string(fields[0]) + "'")
          .with_context("translation table", lineno);
    }
    if (mechanism && *mechanism != *k) {
      throw Error(Errc::kMalformedRecord, "mixed mechanisms in one table")
          .with_context("translation table", lineno);
    }
    mechanism = k;
    char* end = nullptr;
    const std::string value(fields[3]);
    const double theta = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size() || !(theta >= 0.0 && theta <= 1.0)) {
      throw Error(Errc::kNonNumericValue, "bad probability '" + value + "'")
          .with_context("translation table", lineno);
    }
    if (fields[1].empty() || fields[2].empty()) {
      throw Error(Errc::kMalformedRecord, "empty word").with_context("translation table", lineno);
    }
    probs.add(fields[1], fields[2], theta);
  }
  if (!mechanism) throw Error(Errc::kEmptyFile, "translation table is empty");

  // The dump stores normalized rows, so re-normalizing is the identity up to
  // rounding; keep the stored values exactly instead.
  TranslationTable t = probs.normalize(*mechanism);
  for (WordId s = 0; s < t.num_rows(); ++s) {
    for (std::size_t k = t.offsets_[s]; k < t.offsets_[s + 1]; ++k) {
      Entry& e = t.entries_[k];
      e.prob = probs.count(t.source_.word(s), t.target_.word(e.target));
    }
  }
  return t;
}

void CountTable::add(std::string_view source, std::string_view target, double count) {
  auto it = counts_.find(std::string(source));
  if (it == counts_.end()) it = counts_.emplace(std::string(source), decltype(it->second){}).first;
  it->second[std::string(target)] += count;
}

void CountTable::merge(const CountTable& other) {
  for (const auto& [s, row] : other.counts_) {
    auto& mine = counts_[s];
    for (const auto& [t, c] : row) mine[t] += c;
  }
}

double CountTable::count(std::string_view source, std::string_view target) const {
  auto it = counts_.find(std::string(source));
  if (it == counts_.end()) return 0.0;
  auto jt = it->second.find(std::string(target));
  return jt == it->second.end() ? 0.0 : jt->second;
}

TranslationTable CountTable::normalize(Mechanism k) const {
  std::vector<std::string_view> sources;
  std::vector<std::string_view> targets;
  for (const auto& [s, row] : counts_) {
    if (s != kNullToken) sources.push_back(s);
    for (const auto& [t, c] : row) targets.push_back(t);
  }
  std::sort(sources.begin(), sources.end());
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  Vocabulary source_vocab(/*with_null=*/true);
  for (auto s : sources) source_vocab.intern(s);
  Vocabulary target_vocab;
  for (auto t : targets) target_vocab.intern(t);

  std::vector<std::size_t> offsets(1, 0);
  std::vector<TranslationTable::Entry> entries;
  for (WordId s = 0; s < source_vocab.size(); ++s) {
    auto it = counts_.find(source_vocab.word(s));
    if (it != counts_.end()) {
      // Sum in target-id order so the total does not depend on hash order.
      const std::size_t first = entries.size();
      for (const auto& [t, c] : it->second) {
        if (c > 0.0) entries.push_back({target_vocab.find(t), c});
      }
      std::sort(entries.begin() + static_cast<std::ptrdiff_t>(first), entries.end(),
                [](const auto& a, const auto& b) { return a.target < b.target; });
      double total = 0.0;
      for (std::size_t e = first; e < entries.size(); ++e) total += entries[e].prob;
      for (std::size_t e = first; e < entries.size(); ++e) entries[e].prob /= total;
    }
    offsets.push_back(entries.size());
  }
  return TranslationTable(k, std::move(source_vocab), std::move(target_vocab),
                          std::move(offsets), std::move(entries));
}

}  // namespace lspalign
