// core/include/mmclap/contrastive/checkpoint.hpp

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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmclap/archive.hpp"
#include "mmclap/config.hpp"
#include "mmclap/contrastive/model.hpp"
#include "mmclap/taxonomy.hpp"

namespace mmclap::contrastive {

inline constexpr const char* kCheckpointFormat = "mmclap-checkpoint";

struct CheckpointInfo {
  std::string kind;
  RunConfig config;
  std::string config_digest;
  std::string taxonomy_digest;
  std::vector<std::string> tasks;
  nlohmann::json metadata;
};

/// Stores every parameter plus config, task list and taxonomy digest.
void save_checkpoint(const std::filesystem::path& path, ClapModel& model, const EmotionTaxonomy& taxonomy,
                     const nlohmann::json& metadata = nlohmann::json::object());

ClapModel load_checkpoint(const std::filesystem::path& path, CheckpointInfo* info = nullptr);

/// Header fields shared by every checkpoint kind.
nlohmann::json checkpoint_header(const std::string& kind, const RunConfig& config);

/// Overwrites `params` with same-named archive tensors; throws on a missing name or shape mismatch.
void restore_parameters(const encoders::ParameterList& params, const TensorArchive& archive);

}  // namespace mmclap::contrastive
