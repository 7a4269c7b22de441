// tests/support/fixtures.hpp

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

#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mmclap/config.hpp"
#include "mmclap/contrastive/trainer.hpp"
#include "mmclap/taxonomy.hpp"

namespace fixtures {

// Small enough for finite differences, large enough to exercise every layer.
inline mmclap::RunConfig tiny_config() {
  mmclap::RunConfig c;
  c.encoder_dim = 6;
  c.projection_dim = 5;
  c.toy.hash_buckets = 64;
  c.toy.bands = 8;
  c.epochs = 2;
  c.batch_size = 8;
  c.learning_rate = 1e-3;
  return c;
}

inline mmclap::EmotionTaxonomy two_task_taxonomy() {
  auto t = mmclap::default_emotion_taxonomy();
  t.tasks.resize(2);
  return t;
}

inline Eigen::MatrixXd random_frames(Eigen::Index frames, Eigen::Index bands, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(frames, bands);
  for (Eigen::Index i = 0; i < frames; ++i)
    for (Eigen::Index j = 0; j < bands; ++j) m(i, j) = normal(rng);
  return m;
}

inline std::vector<mmclap::contrastive::TrainingItem> random_items(std::size_t n, const mmclap::EmotionTaxonomy& tax,
                                                                   int bands, std::mt19937_64& rng,
                                                                   bool allow_abstain = false) {
  std::uniform_int_distribution<int> label(allow_abstain ? -1 : 0, 1);
  std::uniform_int_distribution<int> frames(2, 6);
  std::vector<mmclap::contrastive::TrainingItem> items;
  for (std::size_t i = 0; i < n; ++i) {
    mmclap::contrastive::TrainingItem item;
    item.id = "item" + std::to_string(i);
    item.features = random_frames(frames(rng), bands, rng);
    for (const auto& t : tax.tasks) item.labels[t.name] = static_cast<mmclap::Label>(label(rng));
    items.push_back(std::move(item));
  }
  return items;
}

// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("mmclap-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace fixtures
