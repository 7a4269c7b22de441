// core/include/mmclap/encoders/backends.hpp

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
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmclap/config.hpp"
#include "mmclap/encoders/embedding.hpp"
#include "mmclap/encoders/parameter.hpp"

namespace mmclap {
struct TensorArchive;
}

namespace mmclap::encoders {

/// Parameter-free per-frame statistics (frames x feature width).
using FrameFeatures = Eigen::MatrixXd;

/// Sparse hashed features per row; row 0 is the class-token input.
struct TokenFeatures {
  using Row = std::vector<std::pair<int, double>>;
  std::vector<Row> rows;
  std::vector<std::string> tokens;
};

/// Per-layer activations kept for backpropagation; back() is the output sequence.
struct ForwardTape {
  std::vector<Eigen::MatrixXd> activations;
  const Eigen::MatrixXd& output() const { return activations.back(); }
};

/// Stack of tanh(W x + b) layers applied row-wise.
class DenseTanhStack {
 public:
  DenseTanhStack() = default;
  DenseTanhStack(int in_dim, int out_dim, int depth, std::mt19937_64& rng, const std::string& prefix);

  void forward(const Eigen::MatrixXd& input, ForwardTape& tape) const;
  /// Consumes tape activations from `first` on; returns d(input).
  Eigen::MatrixXd backward(const ForwardTape& tape, std::size_t first, Eigen::MatrixXd d_out);

  ParameterList parameters();
  std::size_t depth() const noexcept { return weights_.size(); }

 private:
  std::vector<Parameter> weights_;
  std::vector<Parameter> biases_;
};

class AudioBackend {
 public:
  virtual ~AudioBackend() = default;

  virtual std::string kind() const = 0;
  virtual int dim() const = 0;
  virtual int hop() const = 0;

  /// Throws if the waveform is shorter than one hop or holds non-finite samples.
  virtual FrameFeatures frontend(std::span<const float> waveform) const = 0;
  virtual ForwardTape forward(const FrameFeatures& features) const = 0;
  virtual void backward(const FrameFeatures& features, const ForwardTape& tape,
                        const Eigen::MatrixXd& d_output) = 0;

  virtual ParameterList parameters() = 0;
  virtual nlohmann::json describe() const = 0;
};

class TextBackend {
 public:
  virtual ~TextBackend() = default;

  virtual std::string kind() const = 0;
  virtual int dim() const = 0;

  /// Throws on an empty sentence or one without any token.
  virtual TokenFeatures frontend(std::string_view sentence) const = 0;
  virtual ForwardTape forward(const TokenFeatures& features) const = 0;
  virtual void backward(const TokenFeatures& features, const ForwardTape& tape,
                        const Eigen::MatrixXd& d_output) = 0;

  virtual ParameterList parameters() = 0;
  virtual nlohmann::json describe() const = 0;
};

EmbeddingSequence encode_audio(std::span<const float> waveform, const AudioBackend& backend);
EmbeddingSequence encode_text(std::string_view sentence, const TextBackend& backend);

/// Log mel-style band energies over non-overlapping hop-sized frames, followed by
/// a trainable tanh stack of width `dim`.
class ToyAudioBackend final : public AudioBackend {
 public:
  ToyAudioBackend(const ToyBackendOptions& options, int dim, std::mt19937_64& rng);

  std::string kind() const override { return "toy"; }
  int dim() const override { return dim_; }
  int hop() const override { return options_.hop; }

  FrameFeatures frontend(std::span<const float> waveform) const override;
  ForwardTape forward(const FrameFeatures& features) const override;
  void backward(const FrameFeatures& features, const ForwardTape& tape,
                const Eigen::MatrixXd& d_output) override;
  ParameterList parameters() override { return stack_.parameters(); }
  nlohmann::json describe() const override;

  /// DFT bin at the peak of each band's triangular filter.
  const std::vector<int>& band_center_bins() const noexcept { return centers_; }
  double bin_frequency(int bin) const noexcept;

 private:
  ToyBackendOptions options_;
  int dim_;
  std::vector<int> points_;   // bands + 2 filter edge bins
  std::vector<int> centers_;
  std::vector<double> cos_table_;
  std::vector<double> sin_table_;
  DenseTanhStack stack_;
};

/// Hashed character n-grams per token feeding a trainable tanh stack; the class
/// token row sees the mean of all token features.
class ToyTextBackend final : public TextBackend {
 public:
  ToyTextBackend(const ToyBackendOptions& options, int dim, std::mt19937_64& rng);

  std::string kind() const override { return "toy"; }
  int dim() const override { return dim_; }

  TokenFeatures frontend(std::string_view sentence) const override;
  ForwardTape forward(const TokenFeatures& features) const override;
  void backward(const TokenFeatures& features, const ForwardTape& tape,
                const Eigen::MatrixXd& d_output) override;
  ParameterList parameters() override;
  nlohmann::json describe() const override;

  static std::vector<std::string> tokenize(std::string_view sentence);

 private:
  ToyBackendOptions options_;
  int dim_;
  Parameter embed_;       // dim x hash_buckets
  Parameter embed_bias_;  // dim x 1
  DenseTanhStack upper_;  // depth - 1 further layers
};

/// Frames produced for a waveform of `samples` samples: ceil(samples / hop).
inline Eigen::Index frame_count(std::size_t samples, int hop) {
  return static_cast<Eigen::Index>((samples + static_cast<std::size_t>(hop) - 1) /
                                   static_cast<std::size_t>(hop));
}

struct BackendPair {
  std::unique_ptr<AudioBackend> audio;
  std::unique_ptr<TextBackend> text;
};

/// Builds backends named by config.backend: "toy" draws fresh parameters from `rng`;
/// "pretrained:<dir>" loads encoder weights from <dir>/checkpoint.bin.
BackendPair make_backends(const RunConfig& config, std::mt19937_64& rng);

/// Rebuilds backends from their describe() output and archived tensors.
BackendPair backends_from_archive(const TensorArchive& archive);

}  // namespace mmclap::encoders
