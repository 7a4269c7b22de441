// core/src/contrastive/checkpoint.cpp

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

#include "mmclap/contrastive/checkpoint.hpp"

#include "mmclap/error.hpp"

namespace mmclap::contrastive {

nlohmann::json checkpoint_header(const std::string& kind, const RunConfig& config) {
  return {{"format", kCheckpointFormat},
          {"kind", kind},
          {"config", to_json(config)},
          {"config_digest", config_digest(config)},
          {"seed", config.seed}};
}

void restore_parameters(const encoders::ParameterList& params, const TensorArchive& archive) {
  for (auto* p : params) {
    const auto& t = archive.tensor(p->name);
    if (t.rows() != p->value.rows() || t.cols() != p->value.cols())
      throw ShapeError("checkpoint tensor '" + p->name + "' has unexpected shape");
    p->value = t;
    p->zero_grad();
  }
}

void save_checkpoint(const std::filesystem::path& path, ClapModel& model, const EmotionTaxonomy& taxonomy,
                     const nlohmann::json& metadata) {
  TensorArchive archive;
  archive.header = checkpoint_header("clap", model.config());
  archive.header["taxonomy_digest"] = taxonomy_digest(taxonomy);
  archive.header["tasks"] = model.task_names();
  archive.header["audio_backend"] = model.audio_backend().describe();
  archive.header["text_backend"] = model.text_backend().describe();
  archive.header["metadata"] = metadata;
  for (auto* p : model.parameters()) archive.tensors.emplace_back(p->name, p->value);
  write_archive(path, archive);
}

ClapModel load_checkpoint(const std::filesystem::path& path, CheckpointInfo* info) {
  const TensorArchive archive = read_archive(path);
  const auto& h = archive.header;
  if (h.value("format", "") != kCheckpointFormat || h.value("kind", "") != "clap")
    throw Error(path.string() + " is not a CLAP checkpoint");
  const RunConfig config = config_from_json(h.at("config"));
  const auto tasks = h.at("tasks").get<std::vector<std::string>>();
  std::mt19937_64 unused(0);
  ClapModel model(config, tasks, encoders::backends_from_archive(archive), unused);
  restore_parameters(model.parameters(), archive);
  if (info != nullptr) {
    info->kind = "clap";
    info->config = config;
    info->config_digest = h.value("config_digest", "");
    info->taxonomy_digest = h.value("taxonomy_digest", "");
    info->tasks = tasks;
    info->metadata = h.value("metadata", nlohmann::json::object());
  }
  return model;
}

}  // namespace mmclap::contrastive
