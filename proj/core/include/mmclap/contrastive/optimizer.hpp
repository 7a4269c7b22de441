// core/include/mmclap/contrastive/optimizer.hpp

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

#include <vector>

#include "mmclap/config.hpp"
#include "mmclap/encoders/parameter.hpp"

namespace mmclap::contrastive {

/// Adaptive-moment optimizer over a fixed parameter list. Frozen parameters are skipped.
class Adam {
 public:
  Adam(encoders::ParameterList params, double learning_rate, const AdamOptions& options = {});

  void step();
  long steps() const noexcept { return t_; }
  double learning_rate() const noexcept { return lr_; }

 private:
  encoders::ParameterList params_;
  std::vector<Eigen::MatrixXd> m_;
  std::vector<Eigen::MatrixXd> v_;
  double lr_;
  AdamOptions options_;
  long t_ = 0;
};

}  // namespace mmclap::contrastive
