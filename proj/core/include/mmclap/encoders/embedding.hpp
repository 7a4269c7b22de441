// core/include/mmclap/encoders/embedding.hpp

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

#include <Eigen/Core>

namespace mmclap::encoders {

/// Frames (audio) or tokens (text) by encoder width. For text, row 0 is the class token.
struct EmbeddingSequence {
  Eigen::MatrixXd values;

  Eigen::Index length() const noexcept { return values.rows(); }
  Eigen::Index width() const noexcept { return values.cols(); }
};

struct PooledEmbedding {
  Eigen::VectorXd values;
};

/// A point in the joint audio-text space.
struct ProjectedEmbedding {
  Eigen::VectorXd values;
  bool normalized = false;
};

PooledEmbedding pool_mean_time(const EmbeddingSequence& seq);
PooledEmbedding pool_class_token(const EmbeddingSequence& seq);

/// Gradient w.r.t. the sequence given the gradient w.r.t. the pooled vector.
Eigen::MatrixXd pool_mean_time_backward(const Eigen::VectorXd& d_pooled, Eigen::Index length);
Eigen::MatrixXd pool_class_token_backward(const Eigen::VectorXd& d_pooled, Eigen::Index length);

}  // namespace mmclap::encoders
