// core/include/mmclap/contrastive/model.hpp

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

#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmclap/config.hpp"
#include "mmclap/contrastive/loss.hpp"
#include "mmclap/encoders/backends.hpp"
#include "mmclap/encoders/projection.hpp"

namespace mmclap::contrastive {

/// Everything needed to replay an audio item's embedding backwards.
struct AudioPass {
  encoders::ForwardTape tape;
  encoders::PooledEmbedding pooled;
  Eigen::VectorXd projected;  // before normalization
  Eigen::VectorXd embedding;
};

struct TextPass {
  encoders::TokenFeatures features;
  encoders::ForwardTape tape;
  encoders::PooledEmbedding pooled;
  Eigen::VectorXd projected;
  Eigen::VectorXd embedding;
};

/// Audio and text towers with their projection heads and temperature(s).
/// Default-constructed models are empty (no checkpoint loaded).
class ClapModel {
 public:
  ClapModel() = default;
  ClapModel(const RunConfig& config, std::vector<std::string> task_names, std::mt19937_64& rng);
  ClapModel(const RunConfig& config, std::vector<std::string> task_names, encoders::BackendPair backends,
            std::mt19937_64& rng);

  ClapModel(ClapModel&&) noexcept = default;
  ClapModel& operator=(ClapModel&&) noexcept = default;

  bool empty() const noexcept { return audio_ == nullptr; }
  const RunConfig& config() const noexcept { return config_; }
  const std::vector<std::string>& task_names() const noexcept { return task_names_; }

  encoders::AudioBackend& audio_backend() { return *audio_; }
  const encoders::AudioBackend& audio_backend() const { return *audio_; }
  encoders::TextBackend& text_backend() { return *text_; }
  const encoders::TextBackend& text_backend() const { return *text_; }
  encoders::ProjectionHead& audio_head() noexcept { return audio_head_; }
  encoders::ProjectionHead& text_head() noexcept { return text_head_; }
  const encoders::ProjectionHead& audio_head() const noexcept { return audio_head_; }
  const encoders::ProjectionHead& text_head() const noexcept { return text_head_; }

  /// Shared temperature, or the task's own when per-task temperatures are enabled.
  Temperature& temperature(const std::string& task);
  const Temperature& temperature(const std::string& task) const;
  std::vector<Temperature>& temperatures() noexcept { return temperatures_; }

  AudioPass forward_audio(const encoders::FrameFeatures& features) const;
  TextPass forward_text(std::string_view sentence) const;
  void backward_audio(const encoders::FrameFeatures& features, const AudioPass& pass,
                      const Eigen::VectorXd& d_embedding);
  void backward_text(const TextPass& pass, const Eigen::VectorXd& d_embedding);

  encoders::ProjectedEmbedding embed_audio(std::span<const float> waveform) const;
  encoders::ProjectedEmbedding embed_audio_features(const encoders::FrameFeatures& features) const;
  encoders::ProjectedEmbedding embed_text(std::string_view sentence) const;

  /// Every parameter, trainable or not, in a stable order.
  encoders::ParameterList parameters();
  void zero_grad();

 private:
  void require_loaded() const;
  Eigen::VectorXd finish(const Eigen::VectorXd& projected) const;
  Eigen::VectorXd finish_backward(const Eigen::VectorXd& projected, const Eigen::VectorXd& d_embedding) const;

  RunConfig config_;
  std::vector<std::string> task_names_;
  std::unique_ptr<encoders::AudioBackend> audio_;
  std::unique_ptr<encoders::TextBackend> text_;
  encoders::ProjectionHead audio_head_;
  encoders::ProjectionHead text_head_;
  std::vector<Temperature> temperatures_;
};

}  // namespace mmclap::contrastive
