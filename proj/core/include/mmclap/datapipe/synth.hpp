// core/include/mmclap/datapipe/synth.hpp

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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mmclap/audio.hpp"
#include "mmclap/config.hpp"
#include "mmclap/records.hpp"
#include "mmclap/taxonomy.hpp"
#include "mmclap/zeroshot.hpp"

namespace mmclap::datapipe {

struct SynthOptions {
  std::uint64_t seed = 7;
  int n_items = 600;
  int k_train = 6;
  bool include_heldout = true;
  double feature_noise = 0.5;    // per-frame std of the band log-energy latent code
  double annotator_noise = 0.5;  // per-score std on the 1..7 scale
  double annotator_bias = 0.0;   // annotators are offset evenly within [-bias, +bias]
  double neutral_rate = 0.2;     // per (item, task) chance that every annotator gives the midpoint
  int annotators = 3;
  int sessions = 6;
  int speakers = 5;
  int min_frames = 30;
  int max_frames = 60;
  ToyBackendOptions frontend;  // must match the toy audio backend that consumes the audio
};

inline constexpr const char* kHeldoutTask = "purchase-intention";

/// Desk-scale corpus in which each training axis and the held-out axis are linear
/// functions of per-utterance latent codes carried by band energies.
struct SynthDataset {
  std::vector<UtteranceRecord> records;
  std::vector<Waveform> waveforms;  // parallel to records
  EmotionTaxonomy taxonomy;         // training axes only
  zeroshot::PromptFile heldout_prompts;
  Eigen::MatrixXd latents;          // items x (k_train [+ 1 held-out])
  Eigen::MatrixXd mixing;           // bands x k_train
  nlohmann::json metadata;
};

SynthDataset synth_dataset(const SynthOptions& options);

/// Writes audio/<id>.wav, manifest.jsonl, taxonomy.json, heldout.prompts.json and synth.json.
void write_synth_dataset(const SynthDataset& dataset, const std::filesystem::path& dir);

}  // namespace mmclap::datapipe
