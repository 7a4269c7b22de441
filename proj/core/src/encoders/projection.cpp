// core/src/encoders/projection.cpp

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

#include "mmclap/encoders/projection.hpp"

#include <cmath>

#include "mmclap/error.hpp"

namespace mmclap::encoders {

ProjectionHead::ProjectionHead(Eigen::MatrixXd weight, Eigen::VectorXd bias, const std::string& name)
    : weight_(name + ".weight", std::move(weight)), bias_(name + ".bias", std::move(bias)) {
  if (bias_.value.rows() != weight_.value.rows())
    throw ShapeError("projection bias size does not match weight rows");
}

ProjectionHead::ProjectionHead(Eigen::Index in_dim, Eigen::Index out_dim, std::mt19937_64& rng,
                               const std::string& name) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(in_dim)));
  Eigen::MatrixXd w(out_dim, in_dim);
  for (Eigen::Index j = 0; j < in_dim; ++j)
    for (Eigen::Index i = 0; i < out_dim; ++i) w(i, j) = normal(rng);
  weight_ = Parameter(name + ".weight", std::move(w));
  bias_ = Parameter(name + ".bias", Eigen::VectorXd::Zero(out_dim));
}

ProjectionHead ProjectionHead::identity(Eigen::Index dim) {
  return ProjectionHead(Eigen::MatrixXd::Identity(dim, dim), Eigen::VectorXd::Zero(dim), "identity");
}

Eigen::VectorXd ProjectionHead::affine(const Eigen::VectorXd& input) const {
  if (input.size() != in_dim())
    throw ShapeError("projection expects input of size " + std::to_string(in_dim()) + ", got " +
                     std::to_string(input.size()));
  return weight_.value * input + bias_.value;
}

Eigen::VectorXd ProjectionHead::backward(const Eigen::VectorXd& input, const Eigen::VectorXd& d_output) {
  weight_.grad.noalias() += d_output * input.transpose();
  bias_.grad += d_output;
  return weight_.value.transpose() * d_output;
}

ProjectedEmbedding project(const PooledEmbedding& pooled, const ProjectionHead& head, bool normalize) {
  ProjectedEmbedding out{head.affine(pooled.values), normalize};
  if (normalize) {
    const double norm = out.values.norm();
    if (!(norm > 0) || !std::isfinite(norm)) throw Error("cannot normalize a zero or non-finite embedding");
    out.values /= norm;
  }
  return out;
}

Eigen::VectorXd normalize_backward(const Eigen::VectorXd& raw, const Eigen::VectorXd& d_normalized) {
  const double norm = raw.norm();
  const Eigen::VectorXd unit = raw / norm;
  return (d_normalized - unit * unit.dot(d_normalized)) / norm;
}

}  // namespace mmclap::encoders
