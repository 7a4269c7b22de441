// core/src/zeroshot.cpp

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

#include "mmclap/zeroshot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "mmclap/audio.hpp"
#include "mmclap/error.hpp"

namespace mmclap::zeroshot {

void validate(const ClassPromptSet& prompts) {
  if (prompts.texts.size() < 2) throw ValidationError("texts", "a prompt set needs at least two classes");
  if (prompts.labels.size() != prompts.texts.size())
    throw ValidationError("labels", "labels must parallel texts");
  std::set<std::string> seen;
  for (const auto& t : prompts.texts) {
    if (t.empty()) throw ValidationError("texts", "empty prompt");
    if (!seen.insert(t).second) throw ValidationError("texts", "duplicate prompt '" + t + "'");
  }
}

nlohmann::json to_json(const PromptFile& file) {
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& s : file.sets) sets.push_back({{"name", s.name}, {"texts", s.texts}, {"labels", s.labels}});
  return {{"task", file.task}, {"sets", sets}};
}

PromptFile prompt_file_from_json(const nlohmann::json& doc) {
  PromptFile file;
  if (!doc.is_object() || !doc.contains("sets") || !doc.at("sets").is_array())
    throw ValidationError("sets", "prompt file must hold a 'sets' array");
  file.task = doc.value("task", "");
  std::size_t index = 0;
  for (const auto& s : doc.at("sets")) {
    ClassPromptSet set;
    set.name = s.value("name", "set" + std::to_string(index));
    set.texts = s.at("texts").get<std::vector<std::string>>();
    if (s.contains("labels")) {
      set.labels = s.at("labels").get<std::vector<int>>();
    } else {
      for (std::size_t c = 0; c < set.texts.size(); ++c) set.labels.push_back(static_cast<int>(c));
    }
    try {
      validate(set);
    } catch (const ValidationError& e) {
      throw ValidationError("sets[" + std::to_string(index) + "]." + e.field(), e.what());
    }
    file.sets.push_back(std::move(set));
    ++index;
  }
  return file;
}

PromptFile load_prompt_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open prompt file '" + path.string() + "'");
  try {
    return prompt_file_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, path.string() + ": " + e.what());
  }
}

Eigen::MatrixXd embed_prompts(const ClassPromptSet& prompts, const contrastive::ClapModel& model) {
  if (model.empty()) throw Error("embed_prompts: no checkpoint loaded");
  validate(prompts);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(prompts.size()), model.config().projection_dim);
  for (std::size_t c = 0; c < prompts.size(); ++c)
    out.row(static_cast<Eigen::Index>(c)) = model.embed_text(prompts.texts[c]).values.transpose();
  return out;
}

ZeroShotResult classify(const encoders::ProjectedEmbedding& audio, const Eigen::MatrixXd& prompt_embeddings,
                        const std::vector<int>& labels) {
  if (prompt_embeddings.cols() != audio.values.size())
    throw ShapeError("classify: prompt width " + std::to_string(prompt_embeddings.cols()) +
                     " differs from audio width " + std::to_string(audio.values.size()));
  if (prompt_embeddings.rows() < 1) throw ShapeError("classify: no prompts");
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != prompt_embeddings.rows())
    throw ShapeError("classify: labels must parallel prompts");

  ZeroShotResult r;
  const Eigen::VectorXd scores = prompt_embeddings * audio.values;
  r.scores.assign(scores.data(), scores.data() + scores.size());
  std::size_t best = 0;
  for (std::size_t c = 1; c < r.scores.size(); ++c)
    if (r.scores[c] > r.scores[best]) best = c;
  double runner_up = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < r.scores.size(); ++c)
    if (c != best) runner_up = std::max(runner_up, r.scores[c]);
  r.margin = r.scores.size() > 1 ? r.scores[best] - runner_up : 0.0;
  r.predicted = labels.empty() ? static_cast<int>(best) : labels[best];
  return r;
}

ZeroShotResult classify(const encoders::ProjectedEmbedding& audio, const Eigen::MatrixXd& prompt_embeddings) {
  return classify(audio, prompt_embeddings, {});
}

std::vector<double> softmax_view(const ZeroShotResult& result) {
  std::vector<double> out(result.scores.size());
  if (out.empty()) return out;
  const double max = *std::max_element(result.scores.begin(), result.scores.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) sum += out[i] = std::exp(result.scores[i] - max);
  for (auto& v : out) v /= sum;
  return out;
}

std::vector<DatasetPrediction> classify_dataset(const std::vector<LabeledUtterance>& items,
                                                const ClassPromptSet& prompts,
                                                const contrastive::ClapModel& model,
                                                const std::filesystem::path& base_dir) {
  std::vector<DatasetPrediction> out;
  if (items.empty()) return out;
  const Eigen::MatrixXd prompt_embeddings = embed_prompts(prompts, model);
  out.reserve(items.size());
  for (const auto& item : items) {
    DatasetPrediction p{item.id, std::nullopt, {}};
    try {
      const auto wave = load_audio(item.audio_ref, base_dir);
      p.result = classify(model.embed_audio(wave), prompt_embeddings, prompts.labels);
    } catch (const std::exception& e) {
      p.error = e.what();
    }
    out.push_back(std::move(p));
  }
  return out;
}

nlohmann::json to_json(const std::string& id, const ZeroShotResult& result) {
  return {{"id", id}, {"predicted", result.predicted}, {"scores", result.scores}, {"margin", result.margin}};
}

}  // namespace mmclap::zeroshot
