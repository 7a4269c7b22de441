// core/include/mmclap/contrastive/loss.hpp

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

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mmclap/config.hpp"
#include "mmclap/encoders/parameter.hpp"

namespace mmclap::contrastive {

/// Logit scale tau = exp(log_value); positive by construction.
class Temperature {
 public:
  Temperature() : Temperature(1.0 / 0.07, true) {}
  Temperature(double tau, bool learnable, const std::string& name = "temperature");

  double value() const { return std::exp(log_value_.value(0, 0)); }
  bool learnable() const noexcept { return log_value_.trainable; }
  encoders::Parameter& log_value() noexcept { return log_value_; }
  const encoders::Parameter& log_value() const noexcept { return log_value_; }

  /// Adds dL/dlog(tau) given dL/dtau.
  void accumulate(double d_tau) { log_value_.grad(0, 0) += d_tau * value(); }

 private:
  encoders::Parameter log_value_;
};

/// Rows are texts, columns are audio items.
struct SimilarityMatrix {
  Eigen::MatrixXd values;
  Eigen::Index size() const noexcept { return values.rows(); }
};

/// Non-negative, row-stochastic ground truth.
struct TargetMatrix {
  Eigen::MatrixXd values;
  TargetMode mode = TargetMode::Identity;
  Eigen::Index size() const noexcept { return values.rows(); }
};

struct LossReport {
  double total = 0.0;
  std::map<std::string, double> per_task;
  // Tasks with no usable item in the batch (contributed 0).
  std::vector<std::string> empty_tasks;
  // Tasks whose usable items all shared one polarity.
  std::vector<std::string> single_polarity_tasks;
};

/// M[i][j] = tau * <text[i], audio[j]>.
SimilarityMatrix similarity_matrix(const Eigen::MatrixXd& text, const Eigen::MatrixXd& audio, double tau);

TargetMatrix build_targets_identity(Eigen::Index n);

/// Uniform mass over all items sharing row i's label.
TargetMatrix build_targets_label_aware(std::span<const int> labels);

TargetMatrix build_targets(TargetMode mode, std::span<const int> labels);

/// Mean over rows of -sum_j target[i][j] * log softmax(logits[i])[j].
double cross_entropy_rows(const Eigen::MatrixXd& logits, const Eigen::MatrixXd& targets);

/// (CE(M, H) + CE(M^T, H)) / 2. Throws if H is not row-stochastic.
double symmetric_ce_loss(const SimilarityMatrix& m, const TargetMatrix& h);

struct LossGradient {
  double loss = 0.0;
  Eigen::MatrixXd d_logits;  // dL/dM
};

LossGradient symmetric_ce_loss_with_gradient(const SimilarityMatrix& m, const TargetMatrix& h);

struct TaskPair {
  std::string task;
  SimilarityMatrix similarity;
  TargetMatrix targets;
};

/// Unweighted sum of per-task symmetric losses. Throws on an empty list or unequal N.
LossReport multitask_loss(std::span<const TaskPair> pairs);

}  // namespace mmclap::contrastive
