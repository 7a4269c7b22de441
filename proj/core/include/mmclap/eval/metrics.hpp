// core/include/mmclap/eval/metrics.hpp

// Copyright 2026  The mmclap Authors

// See ../../../../COPYING for clarification regarding multiple authors
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

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

namespace mmclap::eval {

struct MetricReport {
  double wa = 0.0;  // fraction of items classified correctly
  double ua = 0.0;  // mean per-class recall
  std::map<int, double> recall;
  std::map<int, std::size_t> support;
  double chance_wa = 0.0;
  double chance_ua = 0.0;
  std::size_t n_items = 0;
};

/// `labels` holds class ids; every class in `classes` must be present. Throws
/// ValidationError naming the first class with zero support.
MetricReport compute_metrics(std::span<const int> predictions, std::span<const int> labels,
                             const std::vector<int>& classes = {0, 1});

struct ChanceRate {
  double wa = 0.0;
  double ua = 0.0;
  int trials = 0;
};

/// Monte Carlo estimate of WA/UA under uniform random guessing over `classes`.
ChanceRate chance_rate(std::span<const int> labels, int trials, std::uint64_t seed,
                       const std::vector<int>& classes = {0, 1});

nlohmann::json to_json(const MetricReport& report);

}  // namespace mmclap::eval
