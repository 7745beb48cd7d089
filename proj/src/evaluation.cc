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

#include "lspalign/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>
#include <tuple>
#include <vector>

#include "lspalign/error.h"
#include "lspalign/unicode.h"

namespace lspalign {

namespace {

FuzzyScore fuzzy_u32(std::u32string_view p, std::u32string_view t) {
  if (p.empty() || t.empty()) throw Error(Errc::kEmptyString, "fuzzy F1 needs non-empty strings");
  const auto lcs = static_cast<double>(lcs_length(p, t));
  FuzzyScore s;
  if (lcs == 0.0) return s;
  s.precision = lcs / static_cast<double>(p.size());
  s.recall = lcs / static_cast<double>(t.size());
  s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

struct PairResult {
  std::string source;
  std::string target;
  std::string type;
  FuzzyScore score;
  FrequencyBucket bucket;
};

double harmonic(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

}  // namespace

std::size_t lcs_length(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t lcs_length(std::string_view a, std::string_view b) {
  return lcs_length(to_u32(a), to_u32(b));
}

FuzzyScore fuzzy_f1(std::string_view predicted, std::string_view gold) {
  return fuzzy_u32(to_u32(predicted), to_u32(gold));
}

FrequencyBucket frequency_bucket(std::size_t frequency) {
  if (frequency <= 3) return FrequencyBucket::kLow;
  if (frequency <= 10) return FrequencyBucket::kMid;
  return FrequencyBucket::kHigh;
}

std::string_view bucket_name(FrequencyBucket b) {
  switch (b) {
    case FrequencyBucket::kLow: return "low";
    case FrequencyBucket::kMid: return "mid";
    case FrequencyBucket::kHigh: return "high";
  }
  return "unknown";
}

EvaluationReport evaluate_lexicon(std::span<const EntityPair> mined, const GoldLexicon& gold,
                                  const FrequencyMap& frequency, const EvalOptions& options) {
  auto prep = [&](std::string_view s) {
    return to_u32(options.casefold ? casefold(s) : std::string(s));
  };

  // Gold keyed by the comparison form of the source.
  std::map<std::u32string, std::vector<std::u32string>> index;
  for (const auto& [source, targets] : gold) {
    auto& row = index[prep(source)];
    for (const auto& t : targets) row.push_back(prep(t));
  }

  std::vector<PairResult> results;
  EvaluationReport report;
  for (const EntityPair& pair : mined) {
    const std::u32string source = prep(pair.source_surface);
    const std::vector<std::u32string>* targets = nullptr;
    if (auto it = index.find(source); it != index.end()) {
      targets = &it->second;
    } else if (options.fuzzy_source_join && !source.empty()) {
      double best = -1.0;
      for (const auto& [key, row] : index) {
        const double f = fuzzy_u32(source, key).f1;
        if (f >= options.source_join_threshold && f > best) {
          best = f;
          targets = &row;
        }
      }
    }
    if (!targets) {
      ++report.unmatched;
      continue;
    }
    const std::u32string predicted = prep(pair.target_surface);
    FuzzyScore best;
    bool first = true;
    for (const auto& t : *targets) {
      const FuzzyScore s = fuzzy_u32(predicted, t);
      if (first || s.f1 > best.f1) best = s;
      first = false;
    }
    auto f = frequency.find(pair.source_surface);
    results.push_back({pair.source_surface, pair.target_surface, pair.entity_type, best,
                       frequency_bucket(f == frequency.end() ? 0 : f->second)});
  }

  // Sum in a canonical order so the report does not depend on input order.
  std::sort(results.begin(), results.end(), [](const PairResult& a, const PairResult& b) {
    return std::tie(a.source, a.target, a.type) < std::tie(b.source, b.target, b.type);
  });
  for (const PairResult& r : results) {
    report.precision += r.score.precision;
    report.recall += r.score.recall;
    report.f1 += r.score.f1;
    BucketStats& b = report.buckets[static_cast<std::size_t>(r.bucket)];
    ++b.matched;
    b.precision += r.score.precision;
    b.recall += r.score.recall;
    b.f1 += r.score.f1;
  }
  report.matched = results.size();
  if (report.matched > 0) {
    const auto n = static_cast<double>(report.matched);
    report.precision /= n;
    report.recall /= n;
    report.f1 /= n;
  }
  for (BucketStats& b : report.buckets) {
    if (b.matched == 0) continue;
    const auto n = static_cast<double>(b.matched);
    b.precision /= n;
    b.recall /= n;
    b.f1 /= n;
  }
  report.harmonic_f1 = harmonic(report.precision, report.recall);
  return report;
}

std::string EvaluationReport::to_json() const {
  nlohmann::ordered_json j;
  j["precision"] = precision;
  j["recall"] = recall;
  j["f1"] = f1;
  j["harmonic_f1"] = harmonic_f1;
  nlohmann::ordered_json b;
  for (std::size_t k = 0; k < buckets.size(); ++k) {
    b[std::string(bucket_name(static_cast<FrequencyBucket>(k)))] = {
        {"f1", buckets[k].f1},
        {"precision", buckets[k].precision},
        {"recall", buckets[k].recall},
        {"matched", buckets[k].matched}};
  }
  j["buckets"] = b;
  j["matched"] = matched;
  j["unmatched"] = unmatched;
  return j.dump(2);
}

std::string EvaluationReport::to_table() const {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-8s %9s %9s %9s %9s\n", "bucket", "matched", "fuzzy-P",
                "fuzzy-R", "fuzzy-F1");
  out << line;
  for (std::size_t k = 0; k < buckets.size(); ++k) {
    const auto& b = buckets[k];
    std::snprintf(line, sizeof(line), "%-8s %9zu %9.4f %9.4f %9.4f\n",
                  std::string(bucket_name(static_cast<FrequencyBucket>(k))).c_str(), b.matched,
                  b.precision, b.recall, b.f1);
    out << line;
  }
  std::snprintf(line, sizeof(line), "%-8s %9zu %9.4f %9.4f %9.4f\n", "overall", matched,
                precision, recall, f1);
  out << line;
  out << "unmatched mined pairs: " << unmatched << '\n';
  return out.str();
}

}  // namespace lspalign
