// core/include/mmclap/eval/sign_test.hpp

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

#include <cstddef>
#include <span>

namespace mmclap::eval {

struct SignTestResult {
  std::size_t n_plus = 0;   // items only system A gets right
  std::size_t n_minus = 0;  // items only system B gets right
  double p_value = 1.0;
};

/// Exact two-sided binomial sign test, ties dropped.
double sign_test_p_value(std::size_t n_plus, std::size_t n_minus);

SignTestResult sign_test(std::span<const int> predictions_a, std::span<const int> predictions_b,
                         std::span<const int> labels);

}  // namespace mmclap::eval
