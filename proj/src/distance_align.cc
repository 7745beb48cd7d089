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

#include "lspalign/distance_align.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "lspalign/unicode.h"

namespace lspalign {

namespace {

std::optional<std::span<const float>> lookup(const EmbeddingTable& embeddings,
                                             std::string_view word) {
  if (auto v = embeddings.find(word)) return v;
  const std::string folded = casefold(word);
  if (folded != word) return embeddings.find(folded);
  return std::nullopt;
}

double normalized_distance(std::u32string_view a, std::u32string_view b) {
  const std::size_t len = std::max(a.size(), b.size());
  if (len == 0) return 0.0;
  return static_cast<double>(levenshtein(a, b)) / static_cast<double>(len);
}

}  // namespace

double semantic_distance(std::string_view source_word, std::string_view target_word,
                         const EmbeddingTable& embeddings) {
  const auto vs = lookup(embeddings, source_word);
  const auto vt = lookup(embeddings, target_word);
  if (!vs || !vt) return 1.0;
  double dot = 0.0;
  double ns = 0.0;
  double nt = 0.0;
  for (std::size_t d = 0; d < vs->size(); ++d) {
    const double a = (*vs)[d];
    const double b = (*vt)[d];
    dot += a * b;
    ns += a * a;
    nt += b * b;
  }
  if (ns == 0.0 || nt == 0.0) return 1.0;
  const double cosine = std::clamp(dot / (std::sqrt(ns) * std::sqrt(nt)), -1.0, 1.0);
  return 1.0 - cosine;
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(to_u32(a), to_u32(b));
}

std::u32string transliterate(std::u32string_view word, const TransliterationTable& table) {
  if (table.empty()) return std::u32string(word);
  std::u32string out;
  out.reserve(word.size());
  std::size_t pos = 0;
  while (pos < word.size()) {
    const TransliterationTable::Rule* match = nullptr;
    if (const auto* candidates = table.candidates(word[pos])) {
      for (std::size_t k : *candidates) {
        const auto& rule = table.rules()[k];
        if (word.substr(pos, rule.lhs.size()) == rule.lhs) {
          match = &rule;
          break;
        }
      }
    }
    if (match) {
      out += match->rhs;
      pos += match->lhs.size();
    } else {
      out.push_back(word[pos]);
      ++pos;
    }
  }
  return out;
}

std::string transliterate(std::string_view word, const TransliterationTable& table) {
  return to_utf8(transliterate(to_u32(word), table));
}

double phonetic_distance(std::string_view source_word, std::string_view target_word,
                         const TransliterationTable& source_to_target,
                         const TransliterationTable& target_to_source) {
  const std::u32string ws = to_u32(casefold(source_word));
  const std::u32string wt = to_u32(casefold(target_word));
  const double plain = normalized_distance(ws, wt);
  const double forward = normalized_distance(transliterate(ws, source_to_target), wt);
  const double backward = normalized_distance(ws, transliterate(wt, target_to_source));
  return std::min({forward, backward, plain});
}

WordDistanceFn make_semantic_distance(const EmbeddingTable& embeddings) {
  return [&embeddings](std::string_view s, std::string_view t) {
    return semantic_distance(s, t, embeddings);
  };
}

WordDistanceFn make_phonetic_distance(const TransliterationTable& source_to_target,
                                      const TransliterationTable& target_to_source) {
  return [&source_to_target, &target_to_source](std::string_view s, std::string_view t) {
    return phonetic_distance(s, t, source_to_target, target_to_source);
  };
}

Alignment greedy_align(std::size_t m, std::size_t n,
                       const std::function<double(std::size_t, std::size_t)>& distance) {
  struct Candidate {
    double d;
    uint32_t i;
    uint32_t j;
  };
  std::vector<Candidate> pairs;
  pairs.reserve(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      pairs.push_back({distance(i, j), static_cast<uint32_t>(i), static_cast<uint32_t>(j)});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Candidate& a, const Candidate& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  std::vector<char> source_covered(m, 0);
  std::vector<char> target_covered(n, 0);
  std::size_t slack = m > n ? m - n : n - m;
  Alignment links;
  links.reserve(std::max(m, n));
  for (const Candidate& c : pairs) {
    const bool s_cov = source_covered[c.i];
    const bool t_cov = target_covered[c.j];
    if (!s_cov && !t_cov) {
      source_covered[c.i] = 1;
      target_covered[c.j] = 1;
    } else if (slack > 0 && n > m && s_cov && !t_cov) {
      target_covered[c.j] = 1;
      --slack;
    } else if (slack > 0 && m > n && t_cov && !s_cov) {
      source_covered[c.i] = 1;
      --slack;
    } else {
      continue;
    }
    links.push_back({c.i, c.j});
    if (links.size() == std::max(m, n)) break;
  }
  normalize(links);
  return links;
}

Alignment greedy_align(const Bitext& b, const WordDistanceFn& distance) {
  const std::size_t m = b.source.size();
  const std::size_t n = b.target.size();
  std::vector<double> matrix(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) matrix[i * n + j] = distance(b.source[i], b.target[j]);
  }
  return greedy_align(m, n, [&](std::size_t i, std::size_t j) { return matrix[i * n + j]; });
}

}  // namespace lspalign
