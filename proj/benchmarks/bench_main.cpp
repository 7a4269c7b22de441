// benchmarks/bench_main.cpp

// Copyright 2026  The mmclap Authors

// See ../COPYING for clarification regarding multiple authors
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

#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "mmclap/contrastive/loss.hpp"
#include "mmclap/contrastive/model.hpp"
#include "mmclap/encoders/backends.hpp"
#include "mmclap/eval/roc.hpp"
#include "mmclap/eval/sign_test.hpp"

using namespace mmclap;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

void BM_SymmetricLossWithGradient(benchmark::State& state) {
  const auto n = state.range(0);
  const contrastive::SimilarityMatrix m{random_matrix(n, n, 1)};
  std::vector<int> labels(n);
  for (Eigen::Index i = 0; i < n; ++i) labels[i] = static_cast<int>(i % 2);
  const auto h = contrastive::build_targets_label_aware(labels);
  for (auto _ : state) benchmark::DoNotOptimize(contrastive::symmetric_ce_loss_with_gradient(m, h));
}
BENCHMARK(BM_SymmetricLossWithGradient)->Arg(16)->Arg(64)->Arg(256);

void BM_SimilarityMatrix(benchmark::State& state) {
  const auto n = state.range(0);
  const Eigen::MatrixXd text = random_matrix(n, 512, 2), audio = random_matrix(n, 512, 3);
  for (auto _ : state) benchmark::DoNotOptimize(contrastive::similarity_matrix(text, audio, 1.0 / 0.07));
}
BENCHMARK(BM_SimilarityMatrix)->Arg(64)->Arg(256);

void BM_ToyAudioFrontend(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const encoders::ToyAudioBackend backend(ToyBackendOptions{}, 64, rng);
  std::vector<float> wave(static_cast<std::size_t>(state.range(0)));
  for (std::size_t n = 0; n < wave.size(); ++n) wave[n] = static_cast<float>(0.1 * std::sin(0.05 * n));
  for (auto _ : state) benchmark::DoNotOptimize(backend.frontend(wave));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ToyAudioFrontend)->Arg(16000)->Arg(64000);

void BM_EmbedText(benchmark::State& state) {
  RunConfig cfg;
  cfg.encoder_dim = 64;
  cfg.projection_dim = 32;
  std::mt19937_64 rng(5);
  const contrastive::ClapModel model(cfg, {"t"}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(model.embed_text("I am interested and positive about buying."));
}
BENCHMARK(BM_EmbedText);

void BM_Youden(benchmark::State& state) {
  const auto n = state.range(0);
  const Eigen::MatrixXd s = random_matrix(n, 1, 6);
  std::vector<double> scores(s.data(), s.data() + n);
  std::vector<int> labels(n);
  for (Eigen::Index i = 0; i < n; ++i) labels[i] = scores[i] + 0.5 * std::sin(i) > 0;
  for (auto _ : state) benchmark::DoNotOptimize(eval::roc_and_youden(scores, labels));
}
BENCHMARK(BM_Youden)->Arg(100)->Arg(10000);

void BM_SignTest(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eval::sign_test_p_value(m * 3 / 5, m - m * 3 / 5));
}
BENCHMARK(BM_SignTest)->Arg(20)->Arg(60)->Arg(1000);

}  // namespace
BENCHMARK_MAIN();
