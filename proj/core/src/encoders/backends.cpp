// core/src/encoders/backends.cpp

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

#include "mmclap/encoders/backends.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>

#include "mmclap/archive.hpp"
#include "mmclap/digest.hpp"
#include "mmclap/audio.hpp"
#include "mmclap/error.hpp"

namespace mmclap::encoders {

namespace {

constexpr double kPowerFloor = 1e-10;
constexpr double kMinFrequency = 100.0;
constexpr double kMaxFrequency = 7000.0;

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, double stddev, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, stddev);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

nlohmann::json options_json(const ToyBackendOptions& o) {
  return {{"hop", o.hop},         {"bands", o.bands},         {"hash_buckets", o.hash_buckets},
          {"min_ngram", o.min_ngram}, {"max_ngram", o.max_ngram}, {"depth", o.depth},
          {"log_reference", o.log_reference}, {"log_scale", o.log_scale}};
}

ToyBackendOptions options_from_json(const nlohmann::json& j) {
  ToyBackendOptions o;
  o.hop = j.at("hop").get<int>();
  o.bands = j.at("bands").get<int>();
  o.hash_buckets = j.at("hash_buckets").get<int>();
  o.min_ngram = j.at("min_ngram").get<int>();
  o.max_ngram = j.at("max_ngram").get<int>();
  o.depth = j.at("depth").get<int>();
  o.log_reference = j.at("log_reference").get<double>();
  o.log_scale = j.at("log_scale").get<double>();
  return o;
}

void load_parameters(ParameterList params, const TensorArchive& archive) {
  for (Parameter* p : params) {
    const auto& t = archive.tensor(p->name);
    if (t.rows() != p->value.rows() || t.cols() != p->value.cols())
      throw ShapeError("archived tensor '" + p->name + "' has unexpected shape");
    p->value = t;
    p->zero_grad();
  }
}

}  // namespace

// ---------------------------------------------------------------------------

DenseTanhStack::DenseTanhStack(int in_dim, int out_dim, int depth, std::mt19937_64& rng,
                               const std::string& prefix) {
  int width = in_dim;
  for (int l = 0; l < depth; ++l) {
    const std::string name = prefix + ".layer" + std::to_string(l);
    weights_.emplace_back(name + ".weight",
                          gaussian(out_dim, width, 1.0 / std::sqrt(static_cast<double>(width)), rng));
    biases_.emplace_back(name + ".bias", Eigen::MatrixXd::Zero(out_dim, 1));
    width = out_dim;
  }
}

void DenseTanhStack::forward(const Eigen::MatrixXd& input, ForwardTape& tape) const {
  const Eigen::MatrixXd* current = &input;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Eigen::MatrixXd z = *current * weights_[l].value.transpose();
    z.rowwise() += biases_[l].value.col(0).transpose();
    tape.activations.push_back(z.array().tanh().matrix());
    current = &tape.activations.back();
  }
}

Eigen::MatrixXd DenseTanhStack::backward(const ForwardTape& tape, std::size_t first,
                                         Eigen::MatrixXd d_out) {
  for (std::size_t l = weights_.size(); l-- > 0;) {
    const auto& input = tape.activations[first + l];
    const auto& output = tape.activations[first + l + 1];
    const Eigen::MatrixXd dz = (d_out.array() * (1.0 - output.array().square())).matrix();
    weights_[l].grad.noalias() += dz.transpose() * input;
    biases_[l].grad += dz.colwise().sum().transpose();
    d_out = dz * weights_[l].value;
  }
  return d_out;
}

ParameterList DenseTanhStack::parameters() {
  ParameterList out;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    out.push_back(&weights_[l]);
    out.push_back(&biases_[l]);
  }
  return out;
}

// ---------------------------------------------------------------------------

EmbeddingSequence encode_audio(std::span<const float> waveform, const AudioBackend& backend) {
  return {backend.forward(backend.frontend(waveform)).output()};
}

EmbeddingSequence encode_text(std::string_view sentence, const TextBackend& backend) {
  return {backend.forward(backend.frontend(sentence)).output()};
}

// ---------------------------------------------------------------------------

ToyAudioBackend::ToyAudioBackend(const ToyBackendOptions& options, int dim, std::mt19937_64& rng)
    : options_(options), dim_(dim) {
  if (options_.hop < 8 || options_.bands < 1 || dim < 1)
    throw ValidationError("toy", "invalid toy audio backend dimensions");
  const double bin_hz = static_cast<double>(kSampleRate) / options_.hop;
  const int max_bin = options_.hop / 2;
  const double lo = hz_to_mel(kMinFrequency);
  const double hi = hz_to_mel(std::min(kMaxFrequency, kSampleRate / 2.0 - bin_hz));
  points_.resize(options_.bands + 2);
  for (int i = 0; i < options_.bands + 2; ++i) {
    const double mel = lo + (hi - lo) * i / (options_.bands + 1);
    int bin = static_cast<int>(std::lround(mel_to_hz(mel) / bin_hz));
    if (i > 0) bin = std::max(bin, points_[i - 1] + 1);
    points_[i] = bin;
  }
  if (points_.back() > max_bin)
    throw ValidationError("toy.bands", "too many bands for hop " + std::to_string(options_.hop));
  centers_.assign(points_.begin() + 1, points_.end() - 1);

  cos_table_.resize(options_.hop);
  sin_table_.resize(options_.hop);
  for (int n = 0; n < options_.hop; ++n) {
    const double angle = 2.0 * std::numbers::pi * n / options_.hop;
    cos_table_[n] = std::cos(angle);
    sin_table_[n] = std::sin(angle);
  }
  stack_ = DenseTanhStack(options_.bands, dim_, options_.depth, rng, "audio");
}

double ToyAudioBackend::bin_frequency(int bin) const noexcept {
  return static_cast<double>(bin) * kSampleRate / options_.hop;
}

FrameFeatures ToyAudioBackend::frontend(std::span<const float> waveform) const {
  const int hop = options_.hop;
  if (waveform.size() < static_cast<std::size_t>(hop))
    throw Error("waveform of " + std::to_string(waveform.size()) +
                " samples is shorter than one hop (" + std::to_string(hop) + ")");
  for (float s : waveform)
    if (!std::isfinite(s)) throw Error("waveform contains non-finite samples");

  const Eigen::Index frames = frame_count(waveform.size(), hop);
  const int first_bin = points_.front();
  const int last_bin = points_.back();
  const double scale = 4.0 / (static_cast<double>(hop) * hop);
  std::vector<double> power(last_bin - first_bin + 1);
  std::vector<double> frame(hop);
  FrameFeatures features(frames, options_.bands);

  for (Eigen::Index f = 0; f < frames; ++f) {
    const std::size_t start = static_cast<std::size_t>(f) * hop;
    for (int n = 0; n < hop; ++n)
      frame[n] = start + n < waveform.size() ? static_cast<double>(waveform[start + n]) : 0.0;
    for (int k = first_bin; k <= last_bin; ++k) {
      double re = 0.0, im = 0.0;
      int index = 0;
      for (int n = 0; n < hop; ++n) {
        re += frame[n] * cos_table_[index];
        im -= frame[n] * sin_table_[index];
        index += k;
        if (index >= hop) index -= hop;
      }
      power[k - first_bin] = (re * re + im * im) * scale;
    }
    for (int b = 0; b < options_.bands; ++b) {
      const int left = points_[b], center = points_[b + 1], right = points_[b + 2];
      double energy = 0.0;
      for (int k = left + 1; k < right; ++k) {
        const double w = k <= center ? static_cast<double>(k - left) / (center - left)
                                     : static_cast<double>(right - k) / (right - center);
        energy += w * power[k - first_bin];
      }
      features(f, b) = (std::log(energy + kPowerFloor) - options_.log_reference) * options_.log_scale;
    }
  }
  return features;
}

ForwardTape ToyAudioBackend::forward(const FrameFeatures& features) const {
  if (features.cols() != options_.bands || features.rows() < 1)
    throw ShapeError("audio frame features do not match the toy front-end");
  ForwardTape tape;
  tape.activations.push_back(features);
  stack_.forward(features, tape);
  return tape;
}

void ToyAudioBackend::backward(const FrameFeatures&, const ForwardTape& tape,
                               const Eigen::MatrixXd& d_output) {
  stack_.backward(tape, 0, d_output);
}

nlohmann::json ToyAudioBackend::describe() const {
  return {{"kind", "toy"}, {"modality", "audio"}, {"dim", dim_}, {"options", options_json(options_)}};
}

// ---------------------------------------------------------------------------

ToyTextBackend::ToyTextBackend(const ToyBackendOptions& options, int dim, std::mt19937_64& rng)
    : options_(options), dim_(dim) {
  if (options_.hash_buckets < 1 || dim < 1 || options_.min_ngram < 1 ||
      options_.max_ngram < options_.min_ngram)
    throw ValidationError("toy", "invalid toy text backend dimensions");
  embed_ = Parameter("text.embed.weight", gaussian(dim_, options_.hash_buckets, 0.5, rng));
  embed_bias_ = Parameter("text.embed.bias", Eigen::MatrixXd::Zero(dim_, 1));
  upper_ = DenseTanhStack(dim_, dim_, options_.depth - 1, rng, "text");
}

std::vector<std::string> ToyTextBackend::tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : sentence) {
    const auto uc = static_cast<unsigned char>(c);
    if (uc >= 0x80 || std::isalnum(uc)) {
      current.push_back(static_cast<char>(uc < 0x80 ? std::tolower(uc) : uc));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

TokenFeatures ToyTextBackend::frontend(std::string_view sentence) const {
  if (sentence.empty()) throw Error("cannot encode an empty sentence");
  TokenFeatures out;
  out.tokens = tokenize(sentence);
  if (out.tokens.empty()) throw Error("sentence has no tokens: '" + std::string(sentence) + "'");

  const auto buckets = static_cast<std::uint64_t>(options_.hash_buckets);
  std::map<int, double> class_row;
  out.rows.emplace_back();
  for (const auto& token : out.tokens) {
    const std::string marked = "<" + token + ">";
    std::map<int, double> counts;
    counts[static_cast<int>(fnv1a64(marked, fnv1a64("word")) % buckets)] += 1.0;
    for (int n = options_.min_ngram; n <= options_.max_ngram; ++n) {
      if (static_cast<std::size_t>(n) > marked.size()) break;
      const std::uint64_t seed = fnv1a64("ngram" + std::to_string(n));
      for (std::size_t i = 0; i + n <= marked.size(); ++i)
        counts[static_cast<int>(fnv1a64(std::string_view(marked).substr(i, n), seed) % buckets)] += 1.0;
    }
    double norm = 0.0;
    for (const auto& kv : counts) norm += kv.second * kv.second;
    norm = std::sqrt(norm);
    TokenFeatures::Row row;
    for (const auto& [bucket, count] : counts) {
      row.emplace_back(bucket, count / norm);
      class_row[bucket] += count / norm / static_cast<double>(out.tokens.size());
    }
    out.rows.push_back(std::move(row));
  }
  out.rows[0].assign(class_row.begin(), class_row.end());
  return out;
}

ForwardTape ToyTextBackend::forward(const TokenFeatures& features) const {
  const auto rows = static_cast<Eigen::Index>(features.rows.size());
  if (rows < 1) throw ShapeError("text features have no rows");
  Eigen::MatrixXd hidden(rows, dim_);
  for (Eigen::Index r = 0; r < rows; ++r) {
    Eigen::VectorXd z = embed_bias_.value.col(0);
    for (const auto& [bucket, weight] : features.rows[r]) z += weight * embed_.value.col(bucket);
    hidden.row(r) = z.array().tanh().matrix().transpose();
  }
  ForwardTape tape;
  tape.activations.push_back(std::move(hidden));
  upper_.forward(tape.activations.back(), tape);
  return tape;
}

void ToyTextBackend::backward(const TokenFeatures& features, const ForwardTape& tape,
                              const Eigen::MatrixXd& d_output) {
  const Eigen::MatrixXd d_hidden = upper_.backward(tape, 0, d_output);
  const auto& hidden = tape.activations.front();
  for (Eigen::Index r = 0; r < d_hidden.rows(); ++r) {
    if (d_hidden.row(r).isZero(0.0)) continue;
    const Eigen::VectorXd dz =
        (d_hidden.row(r).array() * (1.0 - hidden.row(r).array().square())).matrix().transpose();
    embed_bias_.grad.col(0) += dz;
    for (const auto& [bucket, weight] : features.rows[r]) embed_.grad.col(bucket) += weight * dz;
  }
}

ParameterList ToyTextBackend::parameters() {
  ParameterList out{&embed_, &embed_bias_};
  for (Parameter* p : upper_.parameters()) out.push_back(p);
  return out;
}

nlohmann::json ToyTextBackend::describe() const {
  return {{"kind", "toy"}, {"modality", "text"}, {"dim", dim_}, {"options", options_json(options_)}};
}

// ---------------------------------------------------------------------------

BackendPair backends_from_archive(const TensorArchive& archive) {
  const auto& header = archive.header;
  if (!header.contains("audio_backend") || !header.contains("text_backend"))
    throw Error("archive does not describe encoder backends");
  const auto& audio = header.at("audio_backend");
  const auto& text = header.at("text_backend");
  if (audio.at("kind") != "toy" || text.at("kind") != "toy")
    throw Error("archive holds an unsupported backend kind");
  std::mt19937_64 unused(0);
  BackendPair pair;
  pair.audio = std::make_unique<ToyAudioBackend>(options_from_json(audio.at("options")),
                                                 audio.at("dim").get<int>(), unused);
  pair.text = std::make_unique<ToyTextBackend>(options_from_json(text.at("options")),
                                               text.at("dim").get<int>(), unused);
  load_parameters(pair.audio->parameters(), archive);
  load_parameters(pair.text->parameters(), archive);
  return pair;
}

BackendPair make_backends(const RunConfig& config, std::mt19937_64& rng) {
  if (config.backend == "toy") {
    BackendPair pair;
    pair.audio = std::make_unique<ToyAudioBackend>(config.toy, config.encoder_dim, rng);
    pair.text = std::make_unique<ToyTextBackend>(config.toy, config.encoder_dim, rng);
    return pair;
  }
  const std::string prefix = "pretrained:";
  if (config.backend.rfind(prefix, 0) == 0) {
    const std::filesystem::path dir = config.backend.substr(prefix.size());
    auto pair = backends_from_archive(read_archive(dir / "checkpoint.bin"));
    if (pair.audio->dim() != config.encoder_dim || pair.text->dim() != config.encoder_dim)
      throw ValidationError("encoder_dim", "pretrained backend width " +
                                               std::to_string(pair.audio->dim()) +
                                               " does not match encoder_dim " +
                                               std::to_string(config.encoder_dim));
    return pair;
  }
  throw ValidationError("backend", "unknown backend '" + config.backend + "'");
}

}  // namespace mmclap::encoders
