// core/src/contrastive/trainer.cpp

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

#include "mmclap/contrastive/trainer.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "mmclap/audio.hpp"
#include "mmclap/error.hpp"

namespace mmclap::contrastive {

Label TrainingItem::label(const std::string& task) const {
  auto it = labels.find(task);
  return it == labels.end() ? Label::Abstain : it->second;
}

std::vector<TrainingItem> prepare_items(const std::vector<LabeledUtterance>& items,
                                        const encoders::AudioBackend& backend,
                                        const std::filesystem::path& base_dir) {
  std::vector<TrainingItem> out;
  out.reserve(items.size());
  for (const auto& u : items) {
    const auto wave = load_audio(u.audio_ref, base_dir);
    out.push_back({u.id, backend.frontend(wave), u.labels});
  }
  return out;
}

nlohmann::json to_json(const LossReport& report) {
  nlohmann::json doc{{"total", report.total}, {"per_task", report.per_task}};
  if (!report.empty_tasks.empty()) doc["empty_tasks"] = report.empty_tasks;
  if (!report.single_polarity_tasks.empty()) doc["single_polarity_tasks"] = report.single_polarity_tasks;
  return doc;
}

Trainer::Trainer(ClapModel& model, EmotionTaxonomy taxonomy, std::uint64_t seed)
    : model_(model),
      taxonomy_(std::move(taxonomy)),
      rng_(seed),
      optimizer_(model.parameters(), model.config().learning_rate, model.config().adam) {
  auto report = validate_taxonomy(taxonomy_);
  if (!report.ok()) throw ValidationError("taxonomy", report.violations.front());
}

int Trainer::pool_size() const {
  std::size_t size = 1;
  for (const auto& t : taxonomy_.tasks)
    for (int p = 0; p < 2; ++p) size = std::max(size, t.text_pool(p).size());
  return static_cast<int>(size);
}

std::vector<std::pair<std::size_t, int>> Trainer::epoch_examples(std::size_t n_items) const {
  const bool materialize = model_.config().paraphrase_mode == ParaphraseMode::Materialize;
  const int copies = materialize ? pool_size() : 1;
  std::vector<std::pair<std::size_t, int>> examples;
  examples.reserve(n_items * static_cast<std::size_t>(copies));
  for (int v = 0; v < copies; ++v)
    for (std::size_t i = 0; i < n_items; ++i) examples.emplace_back(i, materialize ? v : -1);
  return examples;
}

Pairing Trainer::pair(const Batch& batch) {
  Pairing pairing;
  for (const auto& task : taxonomy_.tasks) {
    TaskBatch tb;
    tb.task = task.name;
    const std::vector<std::string> pools[2] = {task.text_pool(0), task.text_pool(1)};
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const Label label = batch.items[i]->label(task.name);
      if (!is_usable(label)) continue;
      const auto& pool = pools[polarity(label)];
      const int variant = i < batch.variants.size() ? batch.variants[i] : 0;
      std::size_t pick = 0;
      if (variant >= 0) {
        pick = static_cast<std::size_t>(variant) % pool.size();
      } else if (pool.size() > 1) {
        pick = std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng_);
      }
      tb.rows.push_back(static_cast<int>(i));
      tb.texts.push_back(pool[pick]);
      tb.labels.push_back(polarity(label));
    }
    pairing.push_back(std::move(tb));
  }
  return pairing;
}

LossReport Trainer::compute(const Batch& batch, const Pairing& pairing, bool with_gradients) {
  const auto n = static_cast<Eigen::Index>(batch.size());
  if (n == 0) throw Error("empty batch");
  const Eigen::Index dim = model_.config().projection_dim;

  std::vector<AudioPass> audio(batch.size());
  Eigen::MatrixXd audio_emb(n, dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    audio[i] = model_.forward_audio(batch.items[i]->features);
    audio_emb.row(i) = audio[i].embedding.transpose();
  }
  Eigen::MatrixXd d_audio = Eigen::MatrixXd::Zero(n, dim);

  std::unordered_map<std::string, TextPass> text_cache;
  std::unordered_map<std::string, Eigen::VectorXd> d_text;

  LossReport report;
  for (const auto& tb : pairing) {
    const auto rows = static_cast<Eigen::Index>(tb.rows.size());
    if (rows == 0) {
      report.per_task[tb.task] = 0.0;
      report.empty_tasks.push_back(tb.task);
      continue;
    }
    if (std::all_of(tb.labels.begin(), tb.labels.end(), [&](int l) { return l == tb.labels.front(); }))
      report.single_polarity_tasks.push_back(tb.task);

    Eigen::MatrixXd text_k(rows, dim), audio_k(rows, dim);
    for (Eigen::Index r = 0; r < rows; ++r) {
      auto it = text_cache.find(tb.texts[r]);
      if (it == text_cache.end()) it = text_cache.emplace(tb.texts[r], model_.forward_text(tb.texts[r])).first;
      text_k.row(r) = it->second.embedding.transpose();
      audio_k.row(r) = audio_emb.row(tb.rows[r]);
    }

    Temperature& tau = model_.temperature(tb.task);
    const double tau_value = tau.value();
    const SimilarityMatrix m = similarity_matrix(text_k, audio_k, tau_value);
    const TargetMatrix h = build_targets(model_.config().target_mode, tb.labels);
    const LossGradient lg = symmetric_ce_loss_with_gradient(m, h);
    report.per_task[tb.task] = lg.loss;

    if (!with_gradients) continue;
    const Eigen::MatrixXd d_text_k = tau_value * lg.d_logits * audio_k;
    const Eigen::MatrixXd d_audio_k = tau_value * lg.d_logits.transpose() * text_k;
    if (tau.learnable()) tau.accumulate((lg.d_logits.array() * (m.values.array() / tau_value)).sum());
    for (Eigen::Index r = 0; r < rows; ++r) {
      auto [it, inserted] = d_text.try_emplace(tb.texts[r], Eigen::VectorXd::Zero(dim));
      it->second += d_text_k.row(r).transpose();
      d_audio.row(tb.rows[r]) += d_audio_k.row(r);
    }
  }
  for (const auto& [task, loss] : report.per_task) report.total += loss;

  if (with_gradients) {
    for (const auto& [text, grad] : d_text) model_.backward_text(text_cache.at(text), grad);
    for (Eigen::Index i = 0; i < n; ++i)
      if (!d_audio.row(i).isZero(0.0))
        model_.backward_audio(batch.items[i]->features, audio[i], d_audio.row(i).transpose());
  }
  return report;
}

LossReport Trainer::training_step(const Batch& batch) {
  const Pairing pairing = pair(batch);
  model_.zero_grad();
  LossReport report = compute(batch, pairing, true);
  optimizer_.step();
  return report;
}

void Trainer::fit(const std::vector<TrainingItem>& items, const std::function<void(const StepRecord&)>& on_step) {
  if (items.empty()) throw Error("no training items");
  const auto& config = model_.config();
  auto examples = epoch_examples(items.size());

  const auto batch_size = static_cast<std::size_t>(config.batch_size);
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(examples.begin(), examples.end(), rng_);
    for (std::size_t start = 0; start < examples.size(); start += batch_size) {
      Batch batch;
      const std::size_t end = std::min(examples.size(), start + batch_size);
      for (std::size_t e = start; e < end; ++e) {
        batch.items.push_back(&items[examples[e].first]);
        batch.variants.push_back(examples[e].second);
      }
      StepRecord record{0, epoch, training_step(batch)};
      record.step = steps();
      if (on_step) on_step(record);
    }
  }
}

std::vector<int> training_similarity_argmax(const ClapModel& model, const std::vector<TrainingItem>& items,
                                            const EmotionTask& task) {
  const Eigen::Index dim = model.config().projection_dim;
  Eigen::MatrixXd text(2, dim);
  for (int p = 0; p < 2; ++p) text.row(p) = model.forward_text(task.description(p)).embedding.transpose();
  Eigen::MatrixXd audio(static_cast<Eigen::Index>(items.size()), dim);
  for (std::size_t i = 0; i < items.size(); ++i)
    audio.row(static_cast<Eigen::Index>(i)) = model.forward_audio(items[i].features).embedding.transpose();

  // Only two text rows against many audio columns, so build the 2 x n block directly.
  const double tau = model.temperature(task.name).value();
  const Eigen::MatrixXd m = tau * (text * audio.transpose());
  std::vector<int> out(items.size());
  for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(j)] = m(1, j) > m(0, j) ? 1 : 0;
  return out;
}

}  // namespace mmclap::contrastive
