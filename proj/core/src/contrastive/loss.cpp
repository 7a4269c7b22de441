// core/src/contrastive/loss.cpp

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

#include "mmclap/contrastive/loss.hpp"

#include <cmath>
#include <map>

#include "mmclap/error.hpp"

namespace mmclap::contrastive {

namespace {

constexpr double kStochasticTolerance = 1e-9;

void check_targets(const SimilarityMatrix& m, const TargetMatrix& h) {
  if (m.values.rows() != m.values.cols()) throw ShapeError("similarity matrix must be square");
  if (h.values.rows() != m.values.rows() || h.values.cols() != m.values.cols())
    throw ShapeError("target matrix size does not match similarity matrix");
  if ((h.values.array() < 0.0).any()) throw Error("target matrix has negative entries");
  const Eigen::VectorXd sums = h.values.rowwise().sum();
  for (Eigen::Index i = 0; i < sums.size(); ++i)
    if (std::abs(sums(i) - 1.0) > kStochasticTolerance)
      throw Error("target matrix is not row-stochastic (row " + std::to_string(i) + " sums to " +
                  std::to_string(sums(i)) + ")");
}

// Row-wise softmax and log-softmax with the max subtracted for stability.
void softmax_rows(const Eigen::MatrixXd& logits, Eigen::MatrixXd& probs, Eigen::MatrixXd& log_probs) {
  const Eigen::VectorXd max = logits.rowwise().maxCoeff();
  log_probs = logits.colwise() - max;
  const Eigen::VectorXd lse = log_probs.array().exp().rowwise().sum().log();
  log_probs.colwise() -= lse;
  probs = log_probs.array().exp();
}

double ce_with_grad(const Eigen::MatrixXd& logits, const Eigen::MatrixXd& targets, Eigen::MatrixXd* grad) {
  Eigen::MatrixXd probs, log_probs;
  softmax_rows(logits, probs, log_probs);
  const auto n = static_cast<double>(logits.rows());
  // 0 * log p is taken as 0 even when p underflows.
  const double loss = -(targets.array() * log_probs.array()).unaryExpr([](double v) {
    return std::isnan(v) ? 0.0 : v;
  }).sum() / n;
  if (grad != nullptr) {
    const Eigen::VectorXd mass = targets.rowwise().sum();
    *grad = ((probs.array().colwise() * mass.array()) - targets.array()).matrix() / n;
  }
  return loss;
}

}  // namespace

Temperature::Temperature(double tau, bool learnable, const std::string& name)
    : log_value_(name, Eigen::MatrixXd::Constant(1, 1, std::log(tau))) {
  if (!(tau > 0)) throw ValidationError("temperature_init", "must be positive");
  log_value_.trainable = learnable;
}

SimilarityMatrix similarity_matrix(const Eigen::MatrixXd& text, const Eigen::MatrixXd& audio, double tau) {
  if (text.rows() != audio.rows() || text.cols() != audio.cols())
    throw ShapeError("similarity_matrix: text is " + std::to_string(text.rows()) + "x" +
                     std::to_string(text.cols()) + " but audio is " + std::to_string(audio.rows()) +
                     "x" + std::to_string(audio.cols()));
  return {tau * (text * audio.transpose())};
}

TargetMatrix build_targets_identity(Eigen::Index n) {
  if (n < 1) throw Error("target matrix needs N >= 1");
  return {Eigen::MatrixXd::Identity(n, n), TargetMode::Identity};
}

TargetMatrix build_targets_label_aware(std::span<const int> labels) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (n < 1) throw Error("target matrix needs N >= 1");
  std::map<int, double> counts;
  for (int l : labels) counts[l] += 1.0;
  TargetMatrix h{Eigen::MatrixXd::Zero(n, n), TargetMode::LabelAware};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (labels[j] == labels[i]) h.values(i, j) = 1.0 / counts[labels[i]];
  return h;
}

TargetMatrix build_targets(TargetMode mode, std::span<const int> labels) {
  return mode == TargetMode::Identity ? build_targets_identity(static_cast<Eigen::Index>(labels.size()))
                                      : build_targets_label_aware(labels);
}

double cross_entropy_rows(const Eigen::MatrixXd& logits, const Eigen::MatrixXd& targets) {
  return ce_with_grad(logits, targets, nullptr);
}

double symmetric_ce_loss(const SimilarityMatrix& m, const TargetMatrix& h) {
  check_targets(m, h);
  return 0.5 * (ce_with_grad(m.values, h.values, nullptr) +
                ce_with_grad(m.values.transpose(), h.values, nullptr));
}

LossGradient symmetric_ce_loss_with_gradient(const SimilarityMatrix& m, const TargetMatrix& h) {
  check_targets(m, h);
  Eigen::MatrixXd g_rows, g_cols;
  LossGradient out;
  out.loss = 0.5 * (ce_with_grad(m.values, h.values, &g_rows) +
                    ce_with_grad(m.values.transpose(), h.values, &g_cols));
  out.d_logits = 0.5 * (g_rows + g_cols.transpose());
  return out;
}

LossReport multitask_loss(std::span<const TaskPair> pairs) {
  if (pairs.empty()) throw Error("multitask_loss needs at least one task");
  const Eigen::Index n = pairs.front().similarity.size();
  LossReport report;
  for (const auto& pair : pairs) {
    if (pair.similarity.size() != n) throw ShapeError("all tasks must share the batch size N");
    const double loss = symmetric_ce_loss(pair.similarity, pair.targets);
    report.per_task[pair.task] += loss;
    report.total += loss;
  }
  return report;
}

}  // namespace mmclap::contrastive
