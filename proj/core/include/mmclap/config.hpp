// core/include/mmclap/config.hpp

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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mmclap {

enum class TargetMode { Identity, LabelAware };
enum class ParaphraseMode { Sample, Materialize };
enum class NormalizationScope { Pooled, PerAnnotator };
enum class ScoreAggregation { Mean, Median };
enum class ThresholdSplit { Train, Test };

std::string to_string(TargetMode mode);
std::string to_string(ParaphraseMode mode);
std::string to_string(NormalizationScope scope);
std::string to_string(ScoreAggregation aggregation);
std::string to_string(ThresholdSplit split);
TargetMode parse_target_mode(const std::string& text);

/// Parameters of the built-in toy encoders.
struct ToyBackendOptions {
  int hop = 320;            // samples per audio frame
  int bands = 16;           // mel-style bands in the audio front-end
  int hash_buckets = 4096;  // hashed n-gram vocabulary of the text front-end
  int min_ngram = 3;
  int max_ngram = 5;
  int depth = 1;            // tanh layers in each trainable stack
  double log_reference = -9.210340371976184;  // ln(0.01^2): front-end 0 level
  double log_scale = 0.5;

  bool operator==(const ToyBackendOptions&) const = default;
};

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  bool operator==(const AdamOptions&) const = default;
};

struct RunConfig {
  int epochs = 300;
  int batch_size = 64;
  double learning_rate = 1e-6;
  std::string optimizer = "adam";
  AdamOptions adam;
  int projection_dim = 512;
  int encoder_dim = 768;
  double temperature_init = 1.0 / 0.07;
  bool temperature_learnable = true;
  bool per_task_temperature = false;
  TargetMode target_mode = TargetMode::LabelAware;
  ParaphraseMode paraphrase_mode = ParaphraseMode::Sample;
  bool normalize_embeddings = true;
  bool freeze_encoders = false;
  std::uint64_t seed = 0;
  std::string backend = "toy";
  ToyBackendOptions toy;
  int sessions = 6;
  int test_session = 1;
  NormalizationScope normalization_scope = NormalizationScope::Pooled;
  ScoreAggregation aggregation = ScoreAggregation::Mean;
  ThresholdSplit youden_split = ThresholdSplit::Train;
  int chance_trials = 10000;

  bool operator==(const RunConfig&) const = default;
};

/// Field-level problems, e.g. "batch_size: must be positive". Empty when valid.
std::vector<std::string> validate(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);

/// Starts from `base` and overlays every key present in `doc`. Unknown keys and
/// ill-typed values throw ValidationError naming the field.
RunConfig config_from_json(const nlohmann::json& doc, const RunConfig& base = {});

std::string config_digest(const RunConfig& config);

/// Derives an independent stream seed for a named component from the root seed.
std::uint64_t component_seed(std::uint64_t root, const std::string& component);

}  // namespace mmclap
