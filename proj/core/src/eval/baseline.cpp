// core/src/eval/baseline.cpp

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

#include "mmclap/eval/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mmclap/archive.hpp"
#include "mmclap/contrastive/checkpoint.hpp"
#include "mmclap/contrastive/optimizer.hpp"
#include "mmclap/error.hpp"

namespace mmclap::eval {
namespace {

double sigmoid(double x) { return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); }

// log(1 + e^x) without overflow
double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double bce_with_logit(double logit, int label) { return softplus(logit) - label * logit; }

}  // namespace

BaselineModel::BaselineModel(const RunConfig& config, std::string task, encoders::BackendPair backends,
                             std::mt19937_64& rng)
    : config_(config), task_(std::move(task)), backends_(std::move(backends)) {
  if (!backends_.audio || !backends_.text) throw Error("baseline needs encoder backends");
  projection_ = encoders::ProjectionHead(backends_.audio->dim(), config_.projection_dim, rng, "baseline.projection");
  classifier_ = encoders::ProjectionHead(config_.projection_dim, 1, rng, "baseline.classifier");
  for (auto* p : backends_.text->parameters()) p->trainable = false;
  if (config_.freeze_encoders)
    for (auto* p : backends_.audio->parameters()) p->trainable = false;
}

double BaselineModel::logit(const encoders::FrameFeatures& features) const {
  if (!backends_.audio) throw Error("baseline model is empty");
  const auto tape = backends_.audio->forward(features);
  const auto pooled = encoders::pool_mean_time({tape.output()});
  return classifier_.affine(projection_.affine(pooled.values))(0);
}

double BaselineModel::score(const encoders::FrameFeatures& features) const { return sigmoid(logit(features)); }

void BaselineModel::backward(const encoders::FrameFeatures& features, double d_logit) {
  const auto tape = backends_.audio->forward(features);
  const auto pooled = encoders::pool_mean_time({tape.output()});
  const Eigen::VectorXd z = projection_.affine(pooled.values);
  const Eigen::VectorXd d_z = classifier_.backward(z, Eigen::VectorXd::Constant(1, d_logit));
  const Eigen::VectorXd d_pooled = projection_.backward(pooled.values, d_z);
  if (config_.freeze_encoders) return;
  backends_.audio->backward(features, tape, encoders::pool_mean_time_backward(d_pooled, tape.output().rows()));
}

encoders::ParameterList BaselineModel::parameters() {
  encoders::ParameterList out = backends_.audio->parameters();
  for (auto* p : backends_.text->parameters()) out.push_back(p);
  for (auto* p : projection_.parameters()) out.push_back(p);
  for (auto* p : classifier_.parameters()) out.push_back(p);
  return out;
}

void BaselineModel::zero_grad() {
  for (auto* p : parameters()) p->zero_grad();
}

double baseline_loss(const BaselineModel& model, const std::vector<contrastive::TrainingItem>& items) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& item : items) {
    const Label l = item.label(model.task());
    if (!is_usable(l)) continue;
    sum += bce_with_logit(model.logit(item.features), polarity(l));
    ++n;
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

BaselineModel train_baseline(const std::vector<contrastive::TrainingItem>& items, const std::string& task,
                             const RunConfig& config, BaselineReport* report,
                             const std::vector<contrastive::TrainingItem>* threshold_items,
                             const std::function<void(int, double)>& on_epoch) {
  const auto errors = validate(config);
  if (!errors.empty()) throw ValidationError("config", errors.front());
  std::vector<const contrastive::TrainingItem*> usable;
  int positives = 0;
  for (const auto& item : items) {
    const Label l = item.label(task);
    if (!is_usable(l)) continue;
    usable.push_back(&item);
    positives += polarity(l);
  }
  if (positives == 0 || positives == static_cast<int>(usable.size()))
    throw ValidationError("labels", "training data for '" + task + "' contains a single class");

  std::mt19937_64 rng(component_seed(config.seed, "baseline"));
  BaselineModel model(config, task, encoders::make_backends(config, rng), rng);
  contrastive::Adam adam(model.parameters(), config.learning_rate, config.adam);

  BaselineReport local;
  BaselineReport& r = report ? *report : local;
  r = {};
  r.n_train = usable.size();
  r.initial_loss = baseline_loss(model, items);

  std::vector<std::size_t> order(usable.size());
  std::iota(order.begin(), order.end(), 0);
  const auto batch = static_cast<std::size_t>(config.batch_size);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t end = std::min(order.size(), start + batch);
      const double n = static_cast<double>(end - start);
      model.zero_grad();
      for (std::size_t k = start; k < end; ++k) {
        const auto& item = *usable[order[k]];
        const int y = polarity(item.label(task));
        const double s = model.logit(item.features);
        epoch_loss += bce_with_logit(s, y);
        model.backward(item.features, (sigmoid(s) - y) / n);
      }
      adam.step();
    }
    epoch_loss /= static_cast<double>(usable.size());
    r.epoch_losses.push_back(epoch_loss);
    if (on_epoch) on_epoch(epoch, epoch_loss);
  }
  r.final_loss = baseline_loss(model, items);

  const auto& fit_items = threshold_items ? *threshold_items : items;
  std::vector<double> scores;
  std::vector<int> labels;
  for (const auto& item : fit_items) {
    const Label l = item.label(task);
    if (!is_usable(l)) continue;
    scores.push_back(model.score(item.features));
    labels.push_back(polarity(l));
  }
  r.youden = roc_and_youden(scores, labels);
  model.set_threshold(r.youden.threshold);
  return model;
}

std::vector<BaselinePrediction> predict_baseline(const BaselineModel& model,
                                                 const std::vector<contrastive::TrainingItem>& items) {
  std::vector<BaselinePrediction> out;
  out.reserve(items.size());
  for (const auto& item : items) {
    const double s = model.score(item.features);
    out.push_back({item.id, s, decide(s, model.threshold())});
  }
  return out;
}

void save_baseline(const std::filesystem::path& path, BaselineModel& model, const nlohmann::json& metadata) {
  TensorArchive archive;
  archive.header = contrastive::checkpoint_header("baseline", model.config());
  archive.header["task"] = model.task();
  archive.header["threshold"] = model.threshold();
  archive.header["audio_backend"] = model.audio_backend().describe();
  archive.header["text_backend"] = model.text_backend().describe();
  archive.header["metadata"] = metadata;
  for (auto* p : model.parameters()) archive.tensors.emplace_back(p->name, p->value);
  write_archive(path, archive);
}

BaselineModel load_baseline(const std::filesystem::path& path) {
  const TensorArchive archive = read_archive(path);
  const auto& h = archive.header;
  if (h.value("format", "") != contrastive::kCheckpointFormat || h.value("kind", "") != "baseline")
    throw Error(path.string() + " is not a baseline checkpoint");
  const RunConfig config = config_from_json(h.at("config"));
  std::mt19937_64 unused(0);
  BaselineModel model(config, h.at("task").get<std::string>(), encoders::backends_from_archive(archive), unused);
  contrastive::restore_parameters(model.parameters(), archive);
  model.set_threshold(h.at("threshold").get<double>());
  return model;
}

}  // namespace mmclap::eval
