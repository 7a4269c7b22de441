// core/include/mmclap/eval/baseline.hpp

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

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mmclap/config.hpp"
#include "mmclap/contrastive/trainer.hpp"
#include "mmclap/encoders/backends.hpp"
#include "mmclap/encoders/projection.hpp"
#include "mmclap/eval/roc.hpp"

namespace mmclap::eval {

/// Audio encoder, mean pooling, linear projection and a scalar logit, trained with
/// binary cross-entropy on one task.
class BaselineModel {
 public:
  BaselineModel() = default;
  BaselineModel(const RunConfig& config, std::string task, encoders::BackendPair backends, std::mt19937_64& rng);

  /// Sigmoid probability of the positive class.
  double score(const encoders::FrameFeatures& features) const;
  int predict(const encoders::FrameFeatures& features) const { return decide(score(features), threshold_); }

  encoders::ParameterList parameters();
  void zero_grad();

  const RunConfig& config() const noexcept { return config_; }
  const std::string& task() const noexcept { return task_; }
  double threshold() const noexcept { return threshold_; }
  void set_threshold(double t) noexcept { threshold_ = t; }
  const encoders::AudioBackend& audio_backend() const { return *backends_.audio; }
  const encoders::TextBackend& text_backend() const { return *backends_.text; }

  double logit(const encoders::FrameFeatures& features) const;
  /// Backpropagates d(loss)/d(logit) for one item into parameter gradients.
  void backward(const encoders::FrameFeatures& features, double d_logit);

 private:
  RunConfig config_;
  std::string task_;
  encoders::BackendPair backends_;
  encoders::ProjectionHead projection_;
  encoders::ProjectionHead classifier_;
  double threshold_ = 0.5;
};

struct BaselineReport {
  double initial_loss = 0.0;
  double final_loss = 0.0;
  std::vector<double> epoch_losses;
  YoudenResult youden;
  std::size_t n_train = 0;
};

/// Trains on items with a usable label for `task`, then fits the decision threshold by
/// Youden's J on `threshold_items` (the training items when null).
BaselineModel train_baseline(const std::vector<contrastive::TrainingItem>& items, const std::string& task,
                             const RunConfig& config, BaselineReport* report = nullptr,
                             const std::vector<contrastive::TrainingItem>* threshold_items = nullptr,
                             const std::function<void(int, double)>& on_epoch = {});

/// Mean binary cross-entropy over usable items.
double baseline_loss(const BaselineModel& model, const std::vector<contrastive::TrainingItem>& items);

struct BaselinePrediction {
  std::string id;
  double score = 0.0;
  int predicted = 0;
};

/// Scores every item and applies the stored threshold (score >= threshold -> 1).
std::vector<BaselinePrediction> predict_baseline(const BaselineModel& model,
                                                 const std::vector<contrastive::TrainingItem>& items);

void save_baseline(const std::filesystem::path& path, BaselineModel& model,
                   const nlohmann::json& metadata = nlohmann::json::object());
BaselineModel load_baseline(const std::filesystem::path& path);

}  // namespace mmclap::eval
