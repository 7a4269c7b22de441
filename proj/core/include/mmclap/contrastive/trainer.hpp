// core/include/mmclap/contrastive/trainer.hpp

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
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmclap/contrastive/loss.hpp"
#include "mmclap/contrastive/model.hpp"
#include "mmclap/contrastive/optimizer.hpp"
#include "mmclap/records.hpp"
#include "mmclap/taxonomy.hpp"

namespace mmclap::contrastive {

/// An utterance with its audio front-end features precomputed.
struct TrainingItem {
  std::string id;
  encoders::FrameFeatures features;
  std::map<std::string, Label> labels;

  Label label(const std::string& task) const;
};

/// Precomputes front-end features for every labeled utterance.
std::vector<TrainingItem> prepare_items(const std::vector<LabeledUtterance>& items,
                                        const encoders::AudioBackend& backend,
                                        const std::filesystem::path& base_dir);

/// N audio items; `variants[i]` fixes the paraphrase index used for item i
/// (negative: sample one uniformly on every step).
struct Batch {
  std::vector<const TrainingItem*> items;
  std::vector<int> variants;

  std::size_t size() const noexcept { return items.size(); }
};

/// Text pairing of one task within a batch. ABSTAIN items are absent from `rows`.
struct TaskBatch {
  std::string task;
  std::vector<int> rows;  // indices into Batch::items
  std::vector<std::string> texts;
  std::vector<int> labels;
};

using Pairing = std::vector<TaskBatch>;

struct StepRecord {
  long step = 0;
  int epoch = 0;
  LossReport loss;
};

nlohmann::json to_json(const LossReport& report);

/// Owns the optimizer for a model; the only writer of the model's parameters.
class Trainer {
 public:
  Trainer(ClapModel& model, EmotionTaxonomy taxonomy, std::uint64_t seed);

  /// Chooses one description text per (item, task) from the item's polarity pool.
  Pairing pair(const Batch& batch);

  /// Loss of the batch under a fixed pairing; accumulates gradients when asked.
  LossReport compute(const Batch& batch, const Pairing& pairing, bool with_gradients);

  /// Pairs, back-propagates and applies one optimizer step.
  LossReport training_step(const Batch& batch);

  /// Full training loop over `items` for config().epochs epochs.
  void fit(const std::vector<TrainingItem>& items, const std::function<void(const StepRecord&)>& on_step = {});

  /// Number of texts per polarity pool used by materialized pairing (1 + paraphrases).
  int pool_size() const;

  /// (item index, variant) pairs visited each epoch: one per item when sampling,
  /// pool_size() per item when materializing.
  std::vector<std::pair<std::size_t, int>> epoch_examples(std::size_t n_items) const;

  ClapModel& model() noexcept { return model_; }
  const EmotionTaxonomy& taxonomy() const noexcept { return taxonomy_; }
  long steps() const noexcept { return optimizer_.steps(); }

 private:
  ClapModel& model_;
  EmotionTaxonomy taxonomy_;
  std::mt19937_64 rng_;
  Adam optimizer_;
};

/// Training-path decision for one task: for each item, the polarity whose
/// description column wins in the similarity matrix M = tau * E_t * E_a^T.
/// Ties go to polarity 0.
std::vector<int> training_similarity_argmax(const ClapModel& model, const std::vector<TrainingItem>& items,
                                            const EmotionTask& task);

}  // namespace mmclap::contrastive
