// core/src/encoders/embedding.cpp

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

#include "mmclap/encoders/embedding.hpp"

#include "mmclap/error.hpp"

namespace mmclap::encoders {

namespace {
void require_frames(const EmbeddingSequence& seq) {
  if (seq.length() < 1) throw ShapeError("pooling needs a sequence of length >= 1");
}
}  // namespace

PooledEmbedding pool_mean_time(const EmbeddingSequence& seq) {
  require_frames(seq);
  return {seq.values.colwise().mean().transpose()};
}

PooledEmbedding pool_class_token(const EmbeddingSequence& seq) {
  require_frames(seq);
  return {seq.values.row(0).transpose()};
}

Eigen::MatrixXd pool_mean_time_backward(const Eigen::VectorXd& d_pooled, Eigen::Index length) {
  return (d_pooled.transpose() / static_cast<double>(length)).replicate(length, 1);
}

Eigen::MatrixXd pool_class_token_backward(const Eigen::VectorXd& d_pooled, Eigen::Index length) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(length, d_pooled.size());
  d.row(0) = d_pooled.transpose();
  return d;
}

}  // namespace mmclap::encoders
