// tests/unit/test_contrastive.cpp

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

#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "mmclap/contrastive/checkpoint.hpp"
#include "mmclap/contrastive/loss.hpp"
#include "mmclap/contrastive/model.hpp"
#include "mmclap/contrastive/trainer.hpp"
#include "mmclap/datapipe/normalize.hpp"
#include "mmclap/datapipe/synth.hpp"
#include "mmclap/error.hpp"
#include "oracles.hpp"

using namespace mmclap;
using namespace mmclap::contrastive;

namespace {

oracle::Matrix to_rows(const Eigen::MatrixXd& m) {
  oracle::Matrix out(m.rows(), std::vector<double>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

SimilarityMatrix sim(const Eigen::MatrixXd& m) { return {m}; }

Eigen::MatrixXd random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng, double scale = 1.0) {
  return scale * fixtures::random_frames(r, c, rng);
}

Batch batch_of(const std::vector<TrainingItem>& items) {
  Batch b;
  for (const auto& item : items) {
    b.items.push_back(&item);
    b.variants.push_back(0);
  }
  return b;
}

}  // namespace

TEST_SUITE("similarity and targets") {
  TEST_CASE("orthonormal rows at two temperatures") {
    const Eigen::MatrixXd e = Eigen::MatrixXd::Identity(2, 2);
    CHECK(similarity_matrix(e, e, 1.0).values == Eigen::MatrixXd::Identity(2, 2));
    CHECK(similarity_matrix(e, e, 100.0).values == 100.0 * Eigen::MatrixXd::Identity(2, 2));
  }

  TEST_CASE("random inputs match scalar dot products") {
    std::mt19937_64 rng(1);
    const auto t = random_matrix(4, 8, rng), a = random_matrix(4, 8, rng);
    const auto m = similarity_matrix(t, a, 3.0).values;
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double s = 0.0;
        for (int k = 0; k < 8; ++k) s += t(i, k) * a(j, k);
        worst = std::max(worst, std::abs(m(i, j) - 3.0 * s));
      }
    CHECK(worst < 1e-9);
  }

  TEST_CASE("mismatched widths are a shape error") {
    CHECK_THROWS_AS(similarity_matrix(Eigen::MatrixXd::Zero(2, 3), Eigen::MatrixXd::Zero(2, 4), 1.0), ShapeError);
  }

  TEST_CASE("identity targets") {
    CHECK(build_targets_identity(2).values == Eigen::MatrixXd::Identity(2, 2));
    CHECK(build_targets_identity(1).values == Eigen::MatrixXd::Ones(1, 1));
    for (int n = 1; n < 9; ++n)
      CHECK((build_targets_identity(n).values.rowwise().sum().array() == 1.0).all());
  }

  TEST_CASE("label-aware targets") {
    const std::vector<int> labels = {1, 1, 0};
    Eigen::MatrixXd expected(3, 3);
    expected << 0.5, 0.5, 0, 0.5, 0.5, 0, 0, 0, 1;
    CHECK(build_targets_label_aware(labels).values == expected);
    const std::vector<int> same = {0, 0, 0, 0};
    CHECK(build_targets_label_aware(same).values == Eigen::MatrixXd::Constant(4, 4, 0.25));
    const std::vector<int> two = {0, 1};
    CHECK(build_targets_label_aware(two).values == Eigen::MatrixXd::Identity(2, 2));
  }
}

TEST_SUITE("symmetric loss") {
  TEST_CASE("reference values") {
    const auto h = build_targets_identity(2);
    CHECK(std::abs(symmetric_ce_loss(sim(Eigen::Matrix2d::Zero()), h) - std::log(2.0)) < 1e-9);
    Eigen::Matrix2d strong;
    strong << 10, -10, -10, 10;
    CHECK(symmetric_ce_loss(sim(strong), h) < 1e-6);
    CHECK(std::abs(symmetric_ce_loss(sim(Eigen::Matrix2d::Identity()), h) - std::log1p(std::exp(-1.0))) < 1e-6);
  }

  TEST_CASE("matches the scalar softmax oracle on random instances") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
      const auto m = random_matrix(5, 5, rng, 3.0);
      std::vector<int> labels(5);
      for (auto& l : labels) l = static_cast<int>(rng() % 2);
      const auto h = build_targets_label_aware(labels);
      CHECK(std::abs(symmetric_ce_loss(sim(m), h) - oracle::symmetric_ce(to_rows(m), to_rows(h.values))) < 1e-12);
    }
  }

  TEST_CASE("row shift invariance, symmetry and non-negativity") {
    std::mt19937_64 rng(3);
    const auto h = build_targets_identity(4);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::MatrixXd m = random_matrix(4, 4, rng, 2.0);
      Eigen::MatrixXd shifted = m;
      shifted.row(2).array() += 7.5;
      CHECK(std::abs(cross_entropy_rows(shifted, h.values) - cross_entropy_rows(m, h.values)) < 1e-9);
      CHECK(symmetric_ce_loss(sim(m), h) == symmetric_ce_loss(sim(m.transpose()), h));
      CHECK(symmetric_ce_loss(sim(m), h) >= 0.0);
    }
  }

  TEST_CASE("growing the diagonal never raises the identity-target loss") {
    std::mt19937_64 rng(4);
    const auto h = build_targets_identity(4);
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::MatrixXd m = random_matrix(4, 4, rng);
      const double before = symmetric_ce_loss(sim(m), h);
      m.diagonal().array() += 0.5;
      CHECK(symmetric_ce_loss(sim(m), h) <= before);
    }
  }

  TEST_CASE("gradient wrt M matches central differences") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::MatrixXd m = random_matrix(4, 4, rng, 2.0);
      std::vector<int> labels = {0, 1, 1, 0};
      const auto h = trial % 2 ? build_targets_label_aware(labels) : build_targets_identity(4);
      const auto g = symmetric_ce_loss_with_gradient(sim(m), h);
      CHECK(g.loss == doctest::Approx(symmetric_ce_loss(sim(m), h)).epsilon(1e-14));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const double numeric = oracle::central_difference([&] { return symmetric_ce_loss(sim(m), h); }, m(i, j));
          CHECK(oracle::relative_error(g.d_logits(i, j), numeric) < 1e-4);
        }
    }
  }

  TEST_CASE("invalid targets are rejected") {
    Eigen::Matrix2d bad;
    bad << 0.5, 0.2, 0, 1;
    CHECK_THROWS(symmetric_ce_loss(sim(Eigen::Matrix2d::Zero()), {bad, TargetMode::Identity}));
    CHECK_THROWS(symmetric_ce_loss(sim(Eigen::Matrix3d::Zero()), build_targets_identity(2)));
  }
}

TEST_SUITE("multitask loss") {
  TEST_CASE("total is the sum of per-task losses") {
    const auto h = build_targets_identity(2);
    const std::vector<TaskPair> pairs = {{"a", sim(Eigen::Matrix2d::Zero()), h},
                                         {"b", sim(Eigen::Matrix2d::Identity()), h}};
    const auto r = multitask_loss(pairs);
    CHECK(std::abs(r.total - 1.006409) < 1e-6);
    CHECK(std::abs(r.total - (r.per_task.at("a") + r.per_task.at("b"))) < 1e-12);
  }

  TEST_CASE("single task and K copies") {
    std::mt19937_64 rng(6);
    const TaskPair one{"t", sim(random_matrix(3, 3, rng)), build_targets_identity(3)};
    const double single = symmetric_ce_loss(one.similarity, one.targets);
    CHECK(multitask_loss(std::vector<TaskPair>{one}).total == single);
    std::vector<TaskPair> copies;
    for (int k = 0; k < 4; ++k) copies.push_back({"t" + std::to_string(k), one.similarity, one.targets});
    CHECK(std::abs(multitask_loss(copies).total - 4.0 * single) < 1e-12);
  }

  TEST_CASE("empty pair list is an error") { CHECK_THROWS(multitask_loss(std::vector<TaskPair>{})); }
}

TEST_SUITE("model and trainer") {
  TEST_CASE("temperature is log-parameterized") {
    Temperature t(1.0 / 0.07, true);
    CHECK(t.value() == doctest::Approx(1.0 / 0.07).epsilon(1e-12));
    CHECK(t.log_value().value(0, 0) == doctest::Approx(std::log(1.0 / 0.07)));
  }

  TEST_CASE("full-model gradients match central differences") {
    auto cfg = fixtures::tiny_config();
    cfg.temperature_init = 2.0;
    const auto tax = fixtures::two_task_taxonomy();
    std::mt19937_64 rng(11);
    ClapModel model(cfg, tax.names(), rng);
    auto items = fixtures::random_items(8, tax, cfg.toy.bands, rng);
    Trainer trainer(model, tax, 1);
    const Batch batch = batch_of(items);
    const Pairing pairing = trainer.pair(batch);
    model.zero_grad();
    trainer.compute(batch, pairing, true);
    auto loss = [&] { return trainer.compute(batch, pairing, false).total; };
    double worst = 0.0;
    for (auto* p : model.parameters()) {
      for (Eigen::Index k = 0; k < p->value.size(); k += std::max<Eigen::Index>(1, p->value.size() / 15)) {
        const double numeric = oracle::central_difference(loss, p->value.data()[k]);
        worst = std::max(worst, oracle::relative_error(p->grad.data()[k], numeric));
      }
    }
    CHECK(worst < 1e-4);
  }

  TEST_CASE("abstaining or absent tasks contribute zero and are reported") {
    auto cfg = fixtures::tiny_config();
    const auto tax = fixtures::two_task_taxonomy();
    std::mt19937_64 rng(12);
    ClapModel model(cfg, tax.names(), rng);
    auto items = fixtures::random_items(4, tax, cfg.toy.bands, rng);
    for (auto& item : items) item.labels[tax.tasks[1].name] = Label::Abstain;
    items[0].labels[tax.tasks[0].name] = Label::Positive;
    items[1].labels[tax.tasks[0].name] = Label::Positive;
    items[2].labels[tax.tasks[0].name] = Label::Positive;
    items[3].labels[tax.tasks[0].name] = Label::Positive;
    Trainer trainer(model, tax, 1);
    const Batch batch = batch_of(items);
    const auto r = trainer.compute(batch, trainer.pair(batch), false);
    CHECK(r.per_task.at(tax.tasks[1].name) == 0.0);
    CHECK(r.empty_tasks == std::vector<std::string>{tax.tasks[1].name});
    CHECK(r.single_polarity_tasks == std::vector<std::string>{tax.tasks[0].name});
  }

  TEST_CASE("same seed gives the same training trajectory") {
    auto cfg = fixtures::tiny_config();
    const auto tax = fixtures::two_task_taxonomy();
    auto run = [&] {
      std::mt19937_64 rng(component_seed(3, "model"));
      ClapModel model(cfg, tax.names(), rng);
      std::mt19937_64 data(8);
      const auto items = fixtures::random_items(20, tax, cfg.toy.bands, data);
      Trainer trainer(model, tax, component_seed(3, "trainer"));
      std::vector<double> losses;
      trainer.fit(items, [&](const StepRecord& s) { losses.push_back(s.loss.total); });
      return losses;
    };
    const auto a = run();
    CHECK(a.size() == 2 * 3);
    CHECK(a == run());
  }

  TEST_CASE("frozen model repeats the same report") {
    auto cfg = fixtures::tiny_config();
    cfg.learning_rate = 0.0;
    const auto tax = fixtures::two_task_taxonomy();
    std::mt19937_64 rng(13);
    ClapModel model(cfg, tax.names(), rng);
    std::mt19937_64 data(14);
    const auto items = fixtures::random_items(6, tax, cfg.toy.bands, data);
    Trainer trainer(model, tax, 2);
    const Batch batch = batch_of(items);
    const auto a = trainer.training_step(batch);
    const auto b = trainer.training_step(batch);
    CHECK(a.total == b.total);
    CHECK(a.per_task == b.per_task);
  }

  TEST_CASE("training lowers the loss on separable synthetic data") {
    datapipe::SynthOptions so;
    so.n_items = 96;
    so.k_train = 2;
    so.include_heldout = false;
    so.feature_noise = 0.1;
    so.annotator_noise = 0.0;
    so.min_frames = 8;
    so.max_frames = 12;
    const auto ds = datapipe::synth_dataset(so);
    auto labeled = datapipe::label_records(ds.records, ds.taxonomy.names()).items;
    for (std::size_t i = 0; i < labeled.size(); ++i) {
      labeled[i].audio_ref.path.clear();
      labeled[i].audio_ref.samples = ds.waveforms[i];
    }
    RunConfig cfg;
    cfg.encoder_dim = 16;
    cfg.projection_dim = 8;
    cfg.batch_size = 16;
    cfg.learning_rate = 3e-3;
    std::mt19937_64 rng(1);
    ClapModel model(cfg, ds.taxonomy.names(), rng);
    const auto items = prepare_items(labeled, model.audio_backend(), {});
    Trainer trainer(model, ds.taxonomy, 2);
    const Batch all = batch_of(items);
    const Pairing pairing = trainer.pair(all);
    const double before = trainer.compute(all, pairing, false).total;
    std::mt19937_64 pick(3);
    for (int step = 0; step < 200; ++step) {
      Batch b;
      for (int k = 0; k < 16; ++k) {
        b.items.push_back(&items[pick() % items.size()]);
        b.variants.push_back(-1);
      }
      trainer.training_step(b);
    }
    CHECK(trainer.compute(all, pairing, false).total < before);
  }

  TEST_CASE("materialized pairing visits each paraphrase once per epoch") {
    auto cfg = fixtures::tiny_config();
    cfg.paraphrase_mode = ParaphraseMode::Materialize;
    auto tax = fixtures::two_task_taxonomy();
    tax.tasks[0].paraphrases_neg = {"I feel uneasy.", "Things feel wrong."};
    std::mt19937_64 rng(0);
    ClapModel model(cfg, tax.names(), rng);
    Trainer trainer(model, tax, 0);
    CHECK(trainer.pool_size() == 3);
    CHECK(trainer.epoch_examples(5).size() == 15);
    cfg.paraphrase_mode = ParaphraseMode::Sample;
    ClapModel sampled(cfg, tax.names(), rng);
    CHECK(Trainer(sampled, tax, 0).epoch_examples(5).size() == 5);
  }

  TEST_CASE("checkpoint round trip reproduces embeddings") {
    fixtures::TempDir dir("ckpt");
    auto cfg = fixtures::tiny_config();
    cfg.per_task_temperature = true;
    const auto tax = fixtures::two_task_taxonomy();
    std::mt19937_64 rng(21);
    ClapModel model(cfg, tax.names(), rng);
    model.temperature(tax.tasks[1].name).log_value().value(0, 0) = 1.25;
    save_checkpoint(dir / "c.bin", model, tax, {{"note", "x"}});
    CheckpointInfo info;
    const auto back = load_checkpoint(dir / "c.bin", &info);
    CHECK(info.config == cfg);
    CHECK(info.taxonomy_digest == taxonomy_digest(tax));
    CHECK(info.metadata.at("note") == "x");
    CHECK(back.embed_text("I trust.").values == model.embed_text("I trust.").values);
    const Eigen::MatrixXd f = fixtures::random_frames(4, cfg.toy.bands, rng);
    CHECK(back.embed_audio_features(f).values == model.embed_audio_features(f).values);
    CHECK(back.temperature(tax.tasks[1].name).value() == model.temperature(tax.tasks[1].name).value());
  }

  TEST_CASE("a trained checkpoint serves as a pretrained backend") {
    fixtures::TempDir dir("pre");
    auto cfg = fixtures::tiny_config();
    const auto tax = fixtures::two_task_taxonomy();
    std::mt19937_64 rng(22);
    ClapModel model(cfg, tax.names(), rng);
    save_checkpoint(dir / "checkpoint.bin", model, tax);
    auto cfg2 = cfg;
    cfg2.backend = "pretrained:" + dir.path().string();
    std::mt19937_64 rng2(99);
    auto pair = encoders::make_backends(cfg2, rng2);
    const Eigen::MatrixXd f = fixtures::random_frames(3, cfg.toy.bands, rng);
    CHECK(pair.audio->forward(f).output() == model.audio_backend().forward(f).output());
    cfg2.encoder_dim = 7;
    CHECK_THROWS_AS(encoders::make_backends(cfg2, rng2), ValidationError);
  }

  TEST_CASE("empty model refuses to embed") {
    const ClapModel empty;
    CHECK(empty.empty());
    CHECK_THROWS(empty.embed_text("x"));
  }
}
