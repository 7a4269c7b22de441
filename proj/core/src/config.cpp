// core/src/config.cpp

// Copyright 2026  The mmclap Authors

// See ../../COPYING for clarification regarding multiple authors
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

#include "mmclap/config.hpp"

#include <functional>
#include <map>

#include "mmclap/digest.hpp"
#include "mmclap/error.hpp"

namespace mmclap {

std::string to_string(TargetMode mode) {
  return mode == TargetMode::Identity ? "identity" : "label_aware";
}
std::string to_string(ParaphraseMode mode) {
  return mode == ParaphraseMode::Sample ? "sample" : "materialize";
}
std::string to_string(NormalizationScope scope) {
  return scope == NormalizationScope::Pooled ? "pooled" : "per_annotator";
}
std::string to_string(ScoreAggregation aggregation) {
  return aggregation == ScoreAggregation::Mean ? "mean" : "median";
}
std::string to_string(ThresholdSplit split) { return split == ThresholdSplit::Train ? "train" : "test"; }

TargetMode parse_target_mode(const std::string& text) {
  if (text == "identity") return TargetMode::Identity;
  if (text == "label_aware") return TargetMode::LabelAware;
  throw ValidationError("target_mode", "expected 'identity' or 'label_aware', got '" + text + "'");
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> errors;
  auto positive = [&](const char* field, double value) {
    if (!(value > 0)) errors.push_back(std::string(field) + ": must be positive");
  };
  positive("epochs", c.epochs);
  positive("batch_size", c.batch_size);
  positive("learning_rate", c.learning_rate);
  positive("projection_dim", c.projection_dim);
  positive("encoder_dim", c.encoder_dim);
  positive("temperature_init", c.temperature_init);
  positive("sessions", c.sessions);
  positive("chance_trials", c.chance_trials);
  positive("toy.hop", c.toy.hop);
  positive("toy.bands", c.toy.bands);
  positive("toy.hash_buckets", c.toy.hash_buckets);
  positive("toy.min_ngram", c.toy.min_ngram);
  positive("toy.depth", c.toy.depth);
  positive("toy.log_scale", c.toy.log_scale);
  if (c.toy.max_ngram < c.toy.min_ngram) errors.push_back("toy.max_ngram: must be >= toy.min_ngram");
  if (c.optimizer != "adam") errors.push_back("optimizer: only 'adam' is supported");
  if (!(c.adam.beta1 >= 0 && c.adam.beta1 < 1)) errors.push_back("adam.beta1: must lie in [0,1)");
  if (!(c.adam.beta2 >= 0 && c.adam.beta2 < 1)) errors.push_back("adam.beta2: must lie in [0,1)");
  positive("adam.epsilon", c.adam.epsilon);
  if (c.test_session < 1 || c.test_session > c.sessions)
    errors.push_back("test_session: must lie in [1, sessions]");
  if (c.backend != "toy" && c.backend.rfind("pretrained:", 0) != 0)
    errors.push_back("backend: expected 'toy' or 'pretrained:<path>'");
  return errors;
}

nlohmann::json to_json(const RunConfig& c) {
  return {
      {"epochs", c.epochs},
      {"batch_size", c.batch_size},
      {"learning_rate", c.learning_rate},
      {"optimizer", c.optimizer},
      {"adam", {{"beta1", c.adam.beta1}, {"beta2", c.adam.beta2}, {"epsilon", c.adam.epsilon}}},
      {"projection_dim", c.projection_dim},
      {"encoder_dim", c.encoder_dim},
      {"temperature_init", c.temperature_init},
      {"temperature_learnable", c.temperature_learnable},
      {"per_task_temperature", c.per_task_temperature},
      {"target_mode", to_string(c.target_mode)},
      {"paraphrase_mode", to_string(c.paraphrase_mode)},
      {"normalize_embeddings", c.normalize_embeddings},
      {"freeze_encoders", c.freeze_encoders},
      {"seed", c.seed},
      {"backend", c.backend},
      {"toy",
       {{"hop", c.toy.hop},
        {"bands", c.toy.bands},
        {"hash_buckets", c.toy.hash_buckets},
        {"min_ngram", c.toy.min_ngram},
        {"max_ngram", c.toy.max_ngram},
        {"depth", c.toy.depth},
        {"log_reference", c.toy.log_reference},
        {"log_scale", c.toy.log_scale}}},
      {"sessions", c.sessions},
      {"test_session", c.test_session},
      {"normalization_scope", to_string(c.normalization_scope)},
      {"aggregation", to_string(c.aggregation)},
      {"youden_split", to_string(c.youden_split)},
      {"chance_trials", c.chance_trials},
  };
}

namespace {

using Setter = std::function<void(RunConfig&, const nlohmann::json&, const std::string&)>;

template <typename T>
T expect(const nlohmann::json& v, const std::string& field) {
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw ValidationError(field, "expected a boolean");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ValidationError(field, "expected an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (v.is_number_integer() && !v.is_number_unsigned())
        throw ValidationError(field, "expected a non-negative integer");
    }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw ValidationError(field, "expected a number");
  } else {
    if (!v.is_string()) throw ValidationError(field, "expected a string");
  }
  return v.get<T>();
}

template <typename Enum>
Enum pick(const nlohmann::json& v, const std::string& field,
          std::initializer_list<std::pair<const char*, Enum>> choices) {
  const auto text = expect<std::string>(v, field);
  std::string allowed;
  for (const auto& [name, value] : choices) {
    if (text == name) return value;
    allowed += allowed.empty() ? std::string(name) : std::string(", ") + name;
  }
  throw ValidationError(field, "expected one of {" + allowed + "}, got '" + text + "'");
}

template <typename T, typename Owner>
Setter field(T Owner::*member, Owner& (*select)(RunConfig&)) {
  return [member, select](RunConfig& c, const nlohmann::json& v, const std::string& name) {
    select(c).*member = expect<T>(v, name);
  };
}

RunConfig& self(RunConfig& c) { return c; }
ToyBackendOptions& toy(RunConfig& c) { return c.toy; }
AdamOptions& adam(RunConfig& c) { return c.adam; }

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"epochs", field(&RunConfig::epochs, self)},
      {"batch_size", field(&RunConfig::batch_size, self)},
      {"learning_rate", field(&RunConfig::learning_rate, self)},
      {"optimizer", field(&RunConfig::optimizer, self)},
      {"projection_dim", field(&RunConfig::projection_dim, self)},
      {"encoder_dim", field(&RunConfig::encoder_dim, self)},
      {"temperature_init", field(&RunConfig::temperature_init, self)},
      {"temperature_learnable", field(&RunConfig::temperature_learnable, self)},
      {"per_task_temperature", field(&RunConfig::per_task_temperature, self)},
      {"normalize_embeddings", field(&RunConfig::normalize_embeddings, self)},
      {"freeze_encoders", field(&RunConfig::freeze_encoders, self)},
      {"seed", field(&RunConfig::seed, self)},
      {"backend", field(&RunConfig::backend, self)},
      {"sessions", field(&RunConfig::sessions, self)},
      {"test_session", field(&RunConfig::test_session, self)},
      {"chance_trials", field(&RunConfig::chance_trials, self)},
      {"toy.hop", field(&ToyBackendOptions::hop, toy)},
      {"toy.bands", field(&ToyBackendOptions::bands, toy)},
      {"toy.hash_buckets", field(&ToyBackendOptions::hash_buckets, toy)},
      {"toy.min_ngram", field(&ToyBackendOptions::min_ngram, toy)},
      {"toy.max_ngram", field(&ToyBackendOptions::max_ngram, toy)},
      {"toy.depth", field(&ToyBackendOptions::depth, toy)},
      {"toy.log_reference", field(&ToyBackendOptions::log_reference, toy)},
      {"toy.log_scale", field(&ToyBackendOptions::log_scale, toy)},
      {"adam.beta1", field(&AdamOptions::beta1, adam)},
      {"adam.beta2", field(&AdamOptions::beta2, adam)},
      {"adam.epsilon", field(&AdamOptions::epsilon, adam)},
      {"target_mode",
       [](RunConfig& c, const nlohmann::json& v, const std::string& f) {
         c.target_mode = pick<TargetMode>(
             v, f, {{"identity", TargetMode::Identity}, {"label_aware", TargetMode::LabelAware}});
       }},
      {"paraphrase_mode",
       [](RunConfig& c, const nlohmann::json& v, const std::string& f) {
         c.paraphrase_mode = pick<ParaphraseMode>(
             v, f, {{"sample", ParaphraseMode::Sample}, {"materialize", ParaphraseMode::Materialize}});
       }},
      {"normalization_scope",
       [](RunConfig& c, const nlohmann::json& v, const std::string& f) {
         c.normalization_scope = pick<NormalizationScope>(
             v, f,
             {{"pooled", NormalizationScope::Pooled},
              {"per_annotator", NormalizationScope::PerAnnotator}});
       }},
      {"aggregation",
       [](RunConfig& c, const nlohmann::json& v, const std::string& f) {
         c.aggregation = pick<ScoreAggregation>(
             v, f, {{"mean", ScoreAggregation::Mean}, {"median", ScoreAggregation::Median}});
       }},
      {"youden_split",
       [](RunConfig& c, const nlohmann::json& v, const std::string& f) {
         c.youden_split = pick<ThresholdSplit>(
             v, f, {{"train", ThresholdSplit::Train}, {"test", ThresholdSplit::Test}});
       }},
  };
  return table;
}

void overlay(RunConfig& c, const nlohmann::json& doc, const std::string& prefix) {
  if (!doc.is_object())
    throw ValidationError(prefix.empty() ? "config" : prefix, "expected an object");
  for (const auto& [key, value] : doc.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if ((name == "toy" || name == "adam") && value.is_object()) {
      overlay(c, value, name);
      continue;
    }
    auto it = setters().find(name);
    if (it == setters().end()) throw ValidationError(name, "unknown configuration key");
    it->second(c, value, name);
  }
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& doc, const RunConfig& base) {
  RunConfig c = base;
  overlay(c, doc, "");
  return c;
}

std::string config_digest(const RunConfig& config) { return digest_hex(to_json(config).dump()); }

std::uint64_t component_seed(std::uint64_t root, const std::string& component) {
  // splitmix64 finalizer over (root xor hash(component))
  std::uint64_t z = root ^ fnv1a64(component);
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace mmclap
