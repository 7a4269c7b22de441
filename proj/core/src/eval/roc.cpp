// core/src/eval/roc.cpp

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

#include "mmclap/eval/roc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "mmclap/error.hpp"

namespace mmclap::eval {

YoudenResult roc_and_youden(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw ShapeError("scores and labels differ in length");
  std::int64_t pos = 0, neg = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw ValidationError("labels", "ROC needs binary 0/1 labels");
    if (!std::isfinite(scores[i])) throw ValidationError("scores", "non-finite score");
    (labels[i] ? pos : neg) += 1;
  }
  if (pos == 0) throw ValidationError("labels", "class 1 has zero support");
  if (neg == 0) throw ValidationError("labels", "class 0 has zero support");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });

  // Sweep from the highest score down; each distinct score is one threshold.
  struct Point {
    double t;
    std::int64_t tp, fp;
  };
  std::vector<Point> points;
  std::int64_t tp = 0, fp = 0;
  for (std::size_t k = 0; k < order.size();) {
    const double t = scores[order[k]];
    for (; k < order.size() && scores[order[k]] == t; ++k) (labels[order[k]] ? tp : fp) += 1;
    points.push_back({t, tp, fp});
  }
  std::reverse(points.begin(), points.end());

  YoudenResult out;
  std::int64_t best_num = 0;
  bool have = false;
  for (const auto& p : points) {
    out.curve.thresholds.push_back(p.t);
    out.curve.tpr.push_back(static_cast<double>(p.tp) / static_cast<double>(pos));
    out.curve.fpr.push_back(static_cast<double>(p.fp) / static_cast<double>(neg));
    // J * pos * neg, compared exactly
    const std::int64_t num = p.tp * neg - p.fp * pos;
    if (!have || num > best_num) {
      have = true;
      best_num = num;
      out.threshold = p.t;
    }
  }
  out.j = static_cast<double>(best_num) / (static_cast<double>(pos) * static_cast<double>(neg));
  if (best_num <= 0) out.warnings.push_back("no threshold separates the classes better than chance (J <= 0)");
  return out;
}

}  // namespace mmclap::eval
