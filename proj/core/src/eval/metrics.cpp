// core/src/eval/metrics.cpp

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

#include "mmclap/eval/metrics.hpp"

#include <algorithm>
#include <random>

#include "mmclap/error.hpp"

namespace mmclap::eval {
namespace {

MetricReport tally(std::span<const int> predictions, std::span<const int> labels, const std::vector<int>& classes,
                   bool require_support) {
  if (predictions.size() != labels.size())
    throw ShapeError("predictions and labels differ in length (" + std::to_string(predictions.size()) + " vs " +
                     std::to_string(labels.size()) + ")");
  if (classes.empty()) throw ValidationError("classes", "must not be empty");
  MetricReport r;
  r.n_items = labels.size();
  std::map<int, std::size_t> hits;
  for (int c : classes) r.support[c] = 0, hits[c] = 0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = r.support.find(labels[i]);
    if (it == r.support.end()) throw ValidationError("labels", "unknown class " + std::to_string(labels[i]));
    ++it->second;
    if (predictions[i] == labels[i]) ++correct, ++hits[labels[i]];
  }
  double sum = 0.0;
  std::size_t present = 0;
  for (int c : classes) {
    const std::size_t n = r.support[c];
    if (n == 0) {
      if (require_support) throw ValidationError("labels", "class " + std::to_string(c) + " has zero support");
      continue;
    }
    r.recall[c] = static_cast<double>(hits[c]) / static_cast<double>(n);
    sum += r.recall[c];
    ++present;
  }
  r.wa = labels.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(labels.size());
  r.ua = present ? sum / static_cast<double>(present) : 0.0;
  return r;
}

}  // namespace

MetricReport compute_metrics(std::span<const int> predictions, std::span<const int> labels,
                             const std::vector<int>& classes) {
  return tally(predictions, labels, classes, true);
}

ChanceRate chance_rate(std::span<const int> labels, int trials, std::uint64_t seed, const std::vector<int>& classes) {
  if (trials < 1) throw ValidationError("chance_trials", "must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
  std::vector<int> guess(labels.size());
  ChanceRate out;
  out.trials = trials;
  for (int t = 0; t < trials; ++t) {
    for (auto& g : guess) g = classes[pick(rng)];
    const auto r = tally(guess, labels, classes, false);
    out.wa += r.wa;
    out.ua += r.ua;
  }
  out.wa /= trials;
  out.ua /= trials;
  return out;
}

nlohmann::json to_json(const MetricReport& report) {
  nlohmann::json recall = nlohmann::json::object(), support = nlohmann::json::object();
  for (const auto& [c, v] : report.recall) recall[std::to_string(c)] = v;
  for (const auto& [c, n] : report.support) support[std::to_string(c)] = n;
  return {{"wa", report.wa}, {"ua", report.ua}, {"recall", recall}, {"support", support},
          {"chance_wa", report.chance_wa}, {"chance_ua", report.chance_ua}, {"n_items", report.n_items}};
}

}  // namespace mmclap::eval
