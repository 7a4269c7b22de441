// core/src/datapipe/synth.cpp

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

#include "mmclap/datapipe/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mmclap/archive.hpp"
#include "mmclap/encoders/backends.hpp"
#include "mmclap/error.hpp"

namespace mmclap::datapipe {
namespace {

std::string item_id(int i, int n) {
  const int width = std::max(4, static_cast<int>(std::to_string(n).size()));
  std::string digits = std::to_string(i + 1);
  if (static_cast<int>(digits.size()) < width) digits.insert(0, width - digits.size(), '0');
  return "utt" + digits;
}

int score_of(double latent, double bias, double noise) {
  const long v = std::lround(4.0 + 1.5 * latent + bias + noise);
  return static_cast<int>(std::clamp<long>(v, kMinScore, kMaxScore));
}

nlohmann::json options_json(const SynthOptions& o) {
  return {{"seed", o.seed},
          {"n_items", o.n_items},
          {"k_train", o.k_train},
          {"include_heldout", o.include_heldout},
          {"feature_noise", o.feature_noise},
          {"annotator_noise", o.annotator_noise},
          {"annotator_bias", o.annotator_bias},
          {"neutral_rate", o.neutral_rate},
          {"annotators", o.annotators},
          {"sessions", o.sessions},
          {"speakers", o.speakers},
          {"min_frames", o.min_frames},
          {"max_frames", o.max_frames},
          {"hop", o.frontend.hop},
          {"bands", o.frontend.bands}};
}

}  // namespace

SynthDataset synth_dataset(const SynthOptions& o) {
  const auto base = default_emotion_taxonomy();
  if (o.k_train < 1 || o.k_train > static_cast<int>(base.size()))
    throw ValidationError("k_train", "must be in [1, " + std::to_string(base.size()) + "]");
  if (o.n_items < 1) throw ValidationError("n_items", "must be >= 1");
  if (o.neutral_rate < 0.0 || o.neutral_rate >= 1.0) throw ValidationError("neutral_rate", "must be in [0, 1)");
  if (o.annotators < 1) throw ValidationError("annotators", "must be >= 1");
  if (o.sessions < 1) throw ValidationError("sessions", "must be >= 1");
  if (o.speakers < 1) throw ValidationError("speakers", "must be >= 1");
  if (o.min_frames < 1 || o.max_frames < o.min_frames) throw ValidationError("min_frames", "invalid frame range");

  std::mt19937_64 rng(o.seed);
  std::mt19937_64 unused(0);
  const encoders::ToyAudioBackend probe(o.frontend, 1, unused);
  const auto& centers = probe.band_center_bins();
  const int bands = o.frontend.bands;
  const int hop = o.frontend.hop;
  const int k = o.k_train;

  SynthDataset ds;
  ds.taxonomy.tasks.assign(base.tasks.begin(), base.tasks.begin() + k);

  // The held-out axis is the normalized sum of the last (up to) two training axes.
  std::vector<int> parents;
  for (int i = std::max(0, k - 2); i < k; ++i) parents.push_back(i);
  const int n_latent = k + (o.include_heldout ? 1 : 0);

  std::normal_distribution<double> normal(0.0, 1.0);
  ds.mixing.resize(bands, k);
  for (int b = 0; b < bands; ++b)
    for (int j = 0; j < k; ++j) ds.mixing(b, j) = 0.5 * normal(rng);

  ds.latents.resize(o.n_items, n_latent);
  std::uniform_int_distribution<int> frames_dist(o.min_frames, o.max_frames);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
  std::bernoulli_distribution neutral(o.neutral_rate);

  std::vector<std::string> annotators;
  std::vector<double> biases;
  for (int a = 0; a < o.annotators; ++a) {
    annotators.push_back("a" + std::to_string(a + 1));
    biases.push_back(o.annotators == 1 ? 0.0 : o.annotator_bias * (2.0 * a / (o.annotators - 1) - 1.0));
  }

  std::vector<std::string> task_names = ds.taxonomy.names();
  if (o.include_heldout) task_names.push_back(kHeldoutTask);

  for (int i = 0; i < o.n_items; ++i) {
    // Antithetic pairs: odd items mirror the preceding item's latents, so every axis is sign-balanced.
    for (int j = 0; j < k; ++j) ds.latents(i, j) = i % 2 ? -ds.latents(i - 1, j) : normal(rng);
    if (o.include_heldout) {
      double h = 0.0;
      for (int p : parents) h += ds.latents(i, p);
      ds.latents(i, k) = h / std::sqrt(static_cast<double>(parents.size()));
    }
    const Eigen::VectorXd code = ds.mixing * ds.latents.row(i).head(k).transpose();

    const int frames = frames_dist(rng);
    std::vector<double> phases(bands);
    for (auto& p : phases) p = phase_dist(rng);
    Waveform wave(static_cast<std::size_t>(frames) * hop, 0.0f);
    for (int f = 0; f < frames; ++f) {
      for (int b = 0; b < bands; ++b) {
        const double mu = std::clamp(code(b) + o.feature_noise * normal(rng), -4.0, 4.0);
        const double amp = std::exp(0.5 * (o.frontend.log_reference + mu));
        for (int n = 0; n < hop; ++n) {
          const double angle = 2.0 * std::numbers::pi * centers[b] * n / hop + phases[b];
          wave[static_cast<std::size_t>(f) * hop + n] += static_cast<float>(amp * std::cos(angle));
        }
      }
    }

    UtteranceRecord rec;
    rec.id = item_id(i, o.n_items);
    rec.audio_ref.path = "audio/" + rec.id + ".wav";
    rec.session = i % o.sessions + 1;
    rec.speaker = "spk" + std::to_string((i / o.sessions) % o.speakers + 1);
    for (std::size_t t = 0; t < task_names.size(); ++t) {
      // Neutral items keep the modal bin at the scale midpoint, which holds the two sides near 50/50.
      const bool mid = neutral(rng);
      for (std::size_t a = 0; a < annotators.size(); ++a) {
        const int s = score_of(ds.latents(i, static_cast<Eigen::Index>(t)), biases[a], o.annotator_noise * normal(rng));
        rec.raw_scores[task_names[t]][annotators[a]] = mid ? (kMinScore + kMaxScore) / 2 : s;
      }
    }
    ds.records.push_back(std::move(rec));
    ds.waveforms.push_back(std::move(wave));
  }

  if (o.include_heldout) {
    auto compose = [&](int polarity) {
      std::string s = "I am ";
      for (std::size_t p = 0; p < parents.size(); ++p)
        s += (p ? " and " : "") + ds.taxonomy.tasks[parents[p]].keyword(polarity);
      return s + " about buying.";
    };
    ds.heldout_prompts.task = kHeldoutTask;
    ds.heldout_prompts.sets = {
        {"composed", {compose(0), compose(1)}, {0, 1}},
        {"text1", {"I am unwilling to buy.", "I am willing to buy."}, {0, 1}},
        {"text2", {"I do not have the purchase intention.", "I have the purchase intention."}, {0, 1}},
        {"text3", {"I do not want to buy it.", "I want to buy it."}, {0, 1}},
    };
  }

  ds.metadata = {{"generator", "mmclap-synth"},
                 {"options", options_json(o)},
                 {"tasks", ds.taxonomy.names()},
                 {"heldout_task", o.include_heldout ? nlohmann::json(kHeldoutTask) : nlohmann::json()},
                 {"heldout_parents", nlohmann::json::array()}};
  for (int p : parents) ds.metadata["heldout_parents"].push_back(ds.taxonomy.tasks[p].name);
  return ds;
}

void write_synth_dataset(const SynthDataset& dataset, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "audio");
  for (std::size_t i = 0; i < dataset.records.size(); ++i)
    write_wav(dir / dataset.records[i].audio_ref.path, dataset.waveforms[i]);
  save_manifest(dir / "manifest.jsonl", dataset.records);
  save_taxonomy(dir / "taxonomy.json", dataset.taxonomy);
  if (!dataset.heldout_prompts.sets.empty())
    write_file_atomic(dir / "heldout.prompts.json", zeroshot::to_json(dataset.heldout_prompts).dump(2) + "\n");
  write_file_atomic(dir / "synth.json", dataset.metadata.dump(2) + "\n");
}

}  // namespace mmclap::datapipe
