// core/include/mmclap/eval/roc.hpp

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

#include <span>
#include <string>
#include <vector>

namespace mmclap::eval {

/// One point per distinct score, thresholds ascending; an item is positive when score >= threshold.
struct RocCurve {
  std::vector<double> thresholds;
  std::vector<double> tpr;
  std::vector<double> fpr;
};

struct YoudenResult {
  RocCurve curve;
  double threshold = 0.0;
  double j = 0.0;  // TPR - FPR at the threshold
  std::vector<std::string> warnings;
};

/// ROC over binary labels and argmax of Youden's J; the lowest threshold wins ties.
/// Throws ValidationError when either class is absent.
YoudenResult roc_and_youden(std::span<const double> scores, std::span<const int> labels);

inline int decide(double score, double threshold) noexcept { return score >= threshold ? 1 : 0; }

}  // namespace mmclap::eval
