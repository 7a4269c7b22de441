// core/src/contrastive/model.cpp

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

#include "mmclap/contrastive/model.hpp"

#include <algorithm>

#include "mmclap/error.hpp"

namespace mmclap::contrastive {

using encoders::ProjectionHead;

ClapModel::ClapModel(const RunConfig& config, std::vector<std::string> task_names, std::mt19937_64& rng)
    : ClapModel(config, std::move(task_names), encoders::make_backends(config, rng), rng) {}

ClapModel::ClapModel(const RunConfig& config, std::vector<std::string> task_names,
                     encoders::BackendPair backends, std::mt19937_64& rng)
    : config_(config),
      task_names_(std::move(task_names)),
      audio_(std::move(backends.audio)),
      text_(std::move(backends.text)) {
  if (!audio_ || !text_) throw Error("ClapModel needs both an audio and a text backend");
  audio_head_ = ProjectionHead(audio_->dim(), config_.projection_dim, rng, "audio_head");
  text_head_ = ProjectionHead(text_->dim(), config_.projection_dim, rng, "text_head");
  if (config_.per_task_temperature) {
    for (const auto& task : task_names_)
      temperatures_.emplace_back(config_.temperature_init, config_.temperature_learnable,
                                 "temperature." + task);
  } else {
    temperatures_.emplace_back(config_.temperature_init, config_.temperature_learnable, "temperature");
  }
  if (config_.freeze_encoders) {
    for (auto* p : audio_->parameters()) p->trainable = false;
    for (auto* p : text_->parameters()) p->trainable = false;
  }
}

void ClapModel::require_loaded() const {
  if (empty()) throw Error("model is empty: no checkpoint loaded");
}

Temperature& ClapModel::temperature(const std::string& task) {
  return const_cast<Temperature&>(std::as_const(*this).temperature(task));
}

const Temperature& ClapModel::temperature(const std::string& task) const {
  require_loaded();
  if (temperatures_.size() == 1) return temperatures_.front();
  auto it = std::find(task_names_.begin(), task_names_.end(), task);
  if (it == task_names_.end()) throw Error("no temperature for task '" + task + "'");
  return temperatures_[static_cast<std::size_t>(it - task_names_.begin())];
}

Eigen::VectorXd ClapModel::finish(const Eigen::VectorXd& projected) const {
  if (!config_.normalize_embeddings) return projected;
  const double norm = projected.norm();
  if (!(norm > 0)) throw Error("cannot normalize a zero embedding");
  return projected / norm;
}

Eigen::VectorXd ClapModel::finish_backward(const Eigen::VectorXd& projected,
                                           const Eigen::VectorXd& d_embedding) const {
  if (!config_.normalize_embeddings) return d_embedding;
  return encoders::normalize_backward(projected, d_embedding);
}

AudioPass ClapModel::forward_audio(const encoders::FrameFeatures& features) const {
  require_loaded();
  AudioPass pass;
  pass.tape = audio_->forward(features);
  pass.pooled = encoders::pool_mean_time({pass.tape.output()});
  pass.projected = audio_head_.affine(pass.pooled.values);
  pass.embedding = finish(pass.projected);
  return pass;
}

TextPass ClapModel::forward_text(std::string_view sentence) const {
  require_loaded();
  TextPass pass;
  pass.features = text_->frontend(sentence);
  pass.tape = text_->forward(pass.features);
  pass.pooled = encoders::pool_class_token({pass.tape.output()});
  pass.projected = text_head_.affine(pass.pooled.values);
  pass.embedding = finish(pass.projected);
  return pass;
}

void ClapModel::backward_audio(const encoders::FrameFeatures& features, const AudioPass& pass,
                               const Eigen::VectorXd& d_embedding) {
  const Eigen::VectorXd d_projected = finish_backward(pass.projected, d_embedding);
  const Eigen::VectorXd d_pooled = audio_head_.backward(pass.pooled.values, d_projected);
  if (config_.freeze_encoders) return;
  const auto length = pass.tape.output().rows();
  audio_->backward(features, pass.tape, encoders::pool_mean_time_backward(d_pooled, length));
}

void ClapModel::backward_text(const TextPass& pass, const Eigen::VectorXd& d_embedding) {
  const Eigen::VectorXd d_projected = finish_backward(pass.projected, d_embedding);
  const Eigen::VectorXd d_pooled = text_head_.backward(pass.pooled.values, d_projected);
  if (config_.freeze_encoders) return;
  const auto length = pass.tape.output().rows();
  text_->backward(pass.features, pass.tape, encoders::pool_class_token_backward(d_pooled, length));
}

encoders::ProjectedEmbedding ClapModel::embed_audio(std::span<const float> waveform) const {
  require_loaded();
  return embed_audio_features(audio_->frontend(waveform));
}

encoders::ProjectedEmbedding ClapModel::embed_audio_features(const encoders::FrameFeatures& features) const {
  const auto pass = forward_audio(features);
  return {pass.embedding, config_.normalize_embeddings};
}

encoders::ProjectedEmbedding ClapModel::embed_text(std::string_view sentence) const {
  const auto pass = forward_text(sentence);
  return {pass.embedding, config_.normalize_embeddings};
}

encoders::ParameterList ClapModel::parameters() {
  require_loaded();
  encoders::ParameterList out = audio_->parameters();
  for (auto* p : text_->parameters()) out.push_back(p);
  for (auto* p : audio_head_.parameters()) out.push_back(p);
  for (auto* p : text_head_.parameters()) out.push_back(p);
  for (auto& t : temperatures_) out.push_back(&t.log_value());
  return out;
}

void ClapModel::zero_grad() {
  for (auto* p : parameters()) p->zero_grad();
}

}  // namespace mmclap::contrastive
