// core/src/contrastive/optimizer.cpp

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

#include "mmclap/contrastive/optimizer.hpp"

#include <cmath>

namespace mmclap::contrastive {

Adam::Adam(encoders::ParameterList params, double learning_rate, const AdamOptions& options)
    : params_(std::move(params)), lr_(learning_rate), options_(options) {
  for (auto* p : params_) {
    m_.push_back(Eigen::MatrixXd::Zero(p->value.rows(), p->value.cols()));
    v_.push_back(Eigen::MatrixXd::Zero(p->value.rows(), p->value.cols()));
  }
}

void Adam::step() {
  ++t_;
  const double b1 = options_.beta1, b2 = options_.beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  const double step_size = lr_ * std::sqrt(correction2) / correction1;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    auto* p = params_[i];
    if (!p->trainable) continue;
    m_[i] = b1 * m_[i] + (1.0 - b1) * p->grad;
    v_[i] = b2 * v_[i] + (1.0 - b2) * p->grad.cwiseAbs2();
    p->value.array() -= step_size * m_[i].array() / (v_[i].array().sqrt() + options_.epsilon);
  }
}

}  // namespace mmclap::contrastive
