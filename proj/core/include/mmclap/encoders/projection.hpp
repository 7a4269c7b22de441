// core/include/mmclap/encoders/projection.hpp

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

#include <random>

#include "mmclap/encoders/embedding.hpp"
#include "mmclap/encoders/parameter.hpp"

namespace mmclap::encoders {

/// Affine map from encoder width to the joint dimension: W (out x in) and bias (out).
class ProjectionHead {
 public:
  ProjectionHead() = default;
  ProjectionHead(Eigen::MatrixXd weight, Eigen::VectorXd bias, const std::string& name = "head");
  ProjectionHead(Eigen::Index in_dim, Eigen::Index out_dim, std::mt19937_64& rng,
                 const std::string& name = "head");

  static ProjectionHead identity(Eigen::Index dim);

  Eigen::Index in_dim() const noexcept { return weight_.value.cols(); }
  Eigen::Index out_dim() const noexcept { return weight_.value.rows(); }

  Eigen::VectorXd affine(const Eigen::VectorXd& input) const;

  /// Accumulates parameter gradients for one input and returns d(input).
  Eigen::VectorXd backward(const Eigen::VectorXd& input, const Eigen::VectorXd& d_output);

  Parameter& weight() noexcept { return weight_; }
  Parameter& bias() noexcept { return bias_; }
  const Parameter& weight() const noexcept { return weight_; }
  const Parameter& bias() const noexcept { return bias_; }
  ParameterList parameters() { return {&weight_, &bias_}; }

 private:
  Parameter weight_;
  Parameter bias_;
};

ProjectedEmbedding project(const PooledEmbedding& pooled, const ProjectionHead& head, bool normalize);

/// Gradient of v/|v| pulled back to v.
Eigen::VectorXd normalize_backward(const Eigen::VectorXd& raw, const Eigen::VectorXd& d_normalized);

}  // namespace mmclap::encoders
