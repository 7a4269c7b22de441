// core/include/mmclap/zeroshot.hpp

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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "mmclap/contrastive/model.hpp"
#include "mmclap/records.hpp"

namespace mmclap::zeroshot {

/// C >= 2 distinct candidate sentences with parallel class ids.
struct ClassPromptSet {
  std::string name;
  std::vector<std::string> texts;
  std::vector<int> labels;

  std::size_t size() const noexcept { return texts.size(); }
};

/// Throws ValidationError on fewer than two prompts, duplicates, or mismatched labels.
void validate(const ClassPromptSet& prompts);

/// A file of prompt sets for one task.
struct PromptFile {
  std::string task;
  std::vector<ClassPromptSet> sets;
};

nlohmann::json to_json(const PromptFile& file);
PromptFile prompt_file_from_json(const nlohmann::json& doc);
PromptFile load_prompt_file(const std::filesystem::path& path);

struct ZeroShotResult {
  int predicted = 0;            // class id of the winning prompt
  std::vector<double> scores;   // raw dot products, prompt order
  double margin = 0.0;          // top-1 minus top-2 score
};

/// One projected embedding per prompt (C x D).
Eigen::MatrixXd embed_prompts(const ClassPromptSet& prompts, const contrastive::ClapModel& model);

/// scores[c] = <audio, prompt c>; lowest index wins ties.
ZeroShotResult classify(const encoders::ProjectedEmbedding& audio, const Eigen::MatrixXd& prompt_embeddings,
                        const std::vector<int>& labels);
ZeroShotResult classify(const encoders::ProjectedEmbedding& audio, const Eigen::MatrixXd& prompt_embeddings);

/// Softmax over raw scores, for display.
std::vector<double> softmax_view(const ZeroShotResult& result);

struct DatasetPrediction {
  std::string id;
  std::optional<ZeroShotResult> result;
  std::string error;  // set when the item's audio could not be processed
};

/// Encodes each item's audio and classifies it; failures are recorded per item.
std::vector<DatasetPrediction> classify_dataset(const std::vector<LabeledUtterance>& items,
                                                const ClassPromptSet& prompts,
                                                const contrastive::ClapModel& model,
                                                const std::filesystem::path& base_dir);

nlohmann::json to_json(const std::string& id, const ZeroShotResult& result);

}  // namespace mmclap::zeroshot
