// core/src/datapipe/normalize.cpp

// Copyright 2026  The mmclap Authors

// See ../../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "mmclap/datapipe/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mmclap/error.hpp"

namespace mmclap::datapipe {
namespace {

NormalizationStats stats_of(const std::vector<int>& values, NormalizationScope scope, const std::string& what) {
  std::set<int> distinct(values.begin(), values.end());
  if (distinct.size() < 2)
    throw DegenerateDistributionError(what + ": scores have zero variance, cannot z-normalize");
  double mean = 0.0;
  for (int v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (int v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return {mean, std::sqrt(var), scope};
}

const std::string kPooledKey = "*";

}  // namespace

std::map<std::string, NormalizationStats> score_statistics(const std::vector<UtteranceRecord>& records,
                                                           const std::string& task, NormalizationScope scope) {
  std::map<std::string, std::vector<int>> groups;
  for (const auto& r : records) {
    auto it = r.raw_scores.find(task);
    if (it == r.raw_scores.end()) continue;
    for (const auto& [annotator, score] : it->second)
      groups[scope == NormalizationScope::Pooled ? kPooledKey : annotator].push_back(score);
  }
  if (groups.empty()) throw DegenerateDistributionError(task + ": no scores");
  std::map<std::string, NormalizationStats> out;
  for (const auto& [key, values] : groups) {
    const std::string what = scope == NormalizationScope::Pooled ? task : task + "/" + key;
    out.emplace(key, stats_of(values, scope, what));
  }
  return out;
}

NormalizedScores normalize_scores(const std::vector<UtteranceRecord>& records, const std::string& task,
                                  NormalizationScope scope) {
  const auto stats = score_statistics(records, task, scope);
  NormalizedScores out;
  for (const auto& r : records) {
    auto it = r.raw_scores.find(task);
    if (it == r.raw_scores.end()) continue;
    for (const auto& [annotator, score] : it->second) {
      const auto& s = stats.at(scope == NormalizationScope::Pooled ? kPooledKey : annotator);
      out[{r.id, annotator}] = (score - s.mean) / s.std;
    }
  }
  return out;
}

std::vector<std::pair<std::string, double>> utterance_scores(const std::vector<UtteranceRecord>& records,
                                                             const NormalizedScores& normalized,
                                                             ScoreAggregation aggregation) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& r : records) {
    std::vector<double> z;
    for (auto it = normalized.lower_bound({r.id, std::string()}); it != normalized.end() && it->first.first == r.id;
         ++it)
      z.push_back(it->second);
    if (z.empty()) continue;
    double value = 0.0;
    if (aggregation == ScoreAggregation::Mean) {
      for (double v : z) value += v;
      value /= static_cast<double>(z.size());
    } else {
      std::sort(z.begin(), z.end());
      const std::size_t n = z.size();
      value = n % 2 ? z[n / 2] : 0.5 * (z[n / 2 - 1] + z[n / 2]);
    }
    out.emplace_back(r.id, value);
  }
  return out;
}

Binarization binarize_by_mode(std::span<const double> scores) {
  Binarization out;
  if (scores.empty()) {
    out.warnings.push_back("no scores to binarize");
    return out;
  }
  std::vector<long long> bins;
  bins.reserve(scores.size());
  std::map<long long, std::size_t> counts;
  for (double s : scores) {
    if (!std::isfinite(s)) throw ValidationError("score", "non-finite utterance score");
    const long long b = std::llround(s / kModeBinWidth);
    bins.push_back(b);
    ++counts[b];
  }
  long long mode = counts.begin()->first;
  std::size_t best = 0, n_best = 0;
  for (const auto& [b, c] : counts) {  // ascending, so the first maximum is the lowest mode
    if (c > best) {
      best = c;
      mode = b;
      n_best = 1;
    } else if (c == best) {
      ++n_best;
    }
  }
  out.threshold = static_cast<double>(mode) * kModeBinWidth;
  out.modal_count = best;
  if (n_best > 1)
    out.warnings.push_back("multimodal distribution: " + std::to_string(n_best) +
                           " modes, using the lowest");
  if (counts.size() == 1) out.warnings.push_back("all scores identical: every item abstains");
  out.labels.reserve(bins.size());
  for (long long b : bins)
    out.labels.push_back(b < mode ? Label::Negative : b > mode ? Label::Positive : Label::Abstain);
  return out;
}

LabelingResult label_records(const std::vector<UtteranceRecord>& records, const std::vector<std::string>& tasks,
                             const LabelingOptions& options) {
  LabelingResult out;
  out.items.reserve(records.size());
  std::map<std::string, std::size_t> index;
  for (const auto& r : records) {
    index[r.id] = out.items.size();
    out.items.push_back({r.id, r.audio_ref, r.session, {}});
  }
  for (const auto& task : tasks) {
    const auto z = normalize_scores(records, task, options.scope);
    const auto scores = utterance_scores(records, z, options.aggregation);
    std::vector<double> values;
    values.reserve(scores.size());
    for (const auto& s : scores) values.push_back(s.second);
    auto bin = binarize_by_mode(values);
    for (std::size_t i = 0; i < scores.size(); ++i) out.items[index.at(scores[i].first)].labels[task] = bin.labels[i];
    out.thresholds[task] = bin.threshold;
    for (auto& w : bin.warnings) out.warnings.push_back(task + ": " + w);
  }
  return out;
}

}  // namespace mmclap::datapipe
