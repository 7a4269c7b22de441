// tests/unit/test_encoders.cpp

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
#include "mmclap/audio.hpp"
#include "mmclap/encoders/backends.hpp"
#include "mmclap/encoders/embedding.hpp"
#include "mmclap/encoders/projection.hpp"
#include "mmclap/error.hpp"
#include "oracles.hpp"

using namespace mmclap;
using namespace mmclap::encoders;

namespace {

Eigen::MatrixXd m2(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(rows.size(), rows.begin()->size());
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

// Checks every parameter entry (or a random subset of `per_param`) against central differences.
double worst_parameter_error(const ParameterList& params, const std::function<double()>& loss, std::mt19937_64& rng,
                             int per_param = 12) {
  double worst = 0.0;
  for (auto* p : params) {
    const Eigen::Index n = p->value.size();
    std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
    const int checks = std::min<Eigen::Index>(n, per_param);
    for (int c = 0; c < checks; ++c) {
      const Eigen::Index k = n <= per_param ? c : pick(rng);
      const double numeric = oracle::central_difference(loss, p->value.data()[k]);
      worst = std::max(worst, oracle::relative_error(p->grad.data()[k], numeric));
    }
  }
  return worst;
}

}  // namespace

TEST_SUITE("pooling") {
  TEST_CASE("mean over time") {
    CHECK(pool_mean_time({m2({{1, 3}, {3, 5}})}).values == Eigen::Vector2d(2, 4));
    CHECK(pool_mean_time({m2({{7, 7}})}).values == Eigen::Vector2d(7, 7));
  }

  TEST_CASE("mean over 50 random frames matches scalar sums") {
    std::mt19937_64 rng(5);
    const Eigen::MatrixXd frames = fixtures::random_frames(50, 7, rng);
    const auto pooled = pool_mean_time({frames});
    for (Eigen::Index j = 0; j < 7; ++j) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < 50; ++i) s += frames(i, j);
      CHECK(std::abs(pooled.values(j) - s / 50.0) < 1e-9);
    }
  }

  TEST_CASE("class token selects row zero only") {
    Eigen::MatrixXd seq = m2({{1, 2}, {9, 9}});
    CHECK(pool_class_token({seq}).values == Eigen::Vector2d(1, 2));
    seq.row(1).setConstant(-100);
    CHECK(pool_class_token({seq}).values == Eigen::Vector2d(1, 2));
    CHECK(pool_class_token({m2({{4, 5}})}).values == Eigen::Vector2d(4, 5));
  }

  TEST_CASE("empty sequence is a shape error") {
    CHECK_THROWS_AS(pool_mean_time({Eigen::MatrixXd(0, 3)}), ShapeError);
    CHECK_THROWS_AS(pool_class_token({Eigen::MatrixXd(0, 3)}), ShapeError);
  }
}

TEST_SUITE("projection") {
  TEST_CASE("identity head") {
    const auto head = ProjectionHead::identity(2);
    CHECK(project({Eigen::Vector2d(3, 4)}, head, false).values == Eigen::Vector2d(3, 4));
    const auto n = project({Eigen::Vector2d(3, 4)}, head, true);
    CHECK(n.values(0) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(n.values(1) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(n.normalized);
  }

  TEST_CASE("random head matches scalar matvec") {
    std::mt19937_64 rng(9);
    ProjectionHead head(7, 4, rng);
    head.bias().value = fixtures::random_frames(4, 1, rng);
    const Eigen::VectorXd p = fixtures::random_frames(7, 1, rng);
    const auto out = head.affine(p);
    for (Eigen::Index i = 0; i < 4; ++i) {
      double s = head.bias().value(i);
      for (Eigen::Index j = 0; j < 7; ++j) s += head.weight().value(i, j) * p(j);
      CHECK(std::abs(out(i) - s) < 1e-9);
    }
  }

  TEST_CASE("linear without bias") {
    std::mt19937_64 rng(10);
    const ProjectionHead head(5, 3, rng);
    const Eigen::VectorXd p = fixtures::random_frames(5, 1, rng);
    const auto a = project({2.5 * p}, head, false).values;
    const auto b = project({p}, head, false).values;
    CHECK((a - 2.5 * b).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("mismatched input is a shape error") {
    std::mt19937_64 rng(1);
    const ProjectionHead head(5, 3, rng);
    CHECK_THROWS_AS(head.affine(Eigen::VectorXd::Zero(4)), ShapeError);
  }

  TEST_CASE("head and normalization gradients match finite differences") {
    std::mt19937_64 rng(2);
    ProjectionHead head(6, 4, rng, "h");
    head.bias().value = fixtures::random_frames(4, 1, rng);
    const Eigen::VectorXd x = fixtures::random_frames(6, 1, rng);
    const Eigen::VectorXd w = fixtures::random_frames(4, 1, rng);
    auto loss = [&] { return w.dot(project({x}, head, true).values); };
    for (auto* p : head.parameters()) p->zero_grad();
    const Eigen::VectorXd raw = head.affine(x);
    head.backward(x, normalize_backward(raw, w));
    CHECK(worst_parameter_error(head.parameters(), loss, rng, 100) < 1e-4);
  }
}

TEST_SUITE("toy audio backend") {
  TEST_CASE("one second at hop 320 gives 50 frames of width D_a") {
    std::mt19937_64 rng(0);
    ToyAudioBackend backend(ToyBackendOptions{}, 768, rng);
    Waveform w(16000);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = static_cast<float>(0.1 * std::sin(0.05 * i));
    const auto seq = encode_audio(w, backend);
    CHECK(seq.length() == 50);
    CHECK(seq.width() == 768);
    CHECK(frame_count(16001, 320) == 51);
  }

  TEST_CASE("silence is deterministic") {
    std::mt19937_64 rng(0);
    ToyAudioBackend backend(ToyBackendOptions{}, 16, rng);
    const Waveform zeros(3200, 0.0f);
    CHECK(encode_audio(zeros, backend).values == encode_audio(zeros, backend).values);
  }

  TEST_CASE("a sinusoid on a band centre lands in that band") {
    std::mt19937_64 rng(0);
    ToyBackendOptions opt;
    ToyAudioBackend backend(opt, 4, rng);
    const int band = 5;
    const int bin = backend.band_center_bins()[band];
    const double amp = 0.2;
    Waveform w(opt.hop * 3);
    for (std::size_t n = 0; n < w.size(); ++n)
      w[n] = static_cast<float>(amp * std::cos(2.0 * 3.14159265358979323846 * bin * n / opt.hop));
    const auto f = backend.frontend(w);
    const double expected = (std::log(amp * amp) - opt.log_reference) * opt.log_scale;
    CHECK(f(1, band) == doctest::Approx(expected).epsilon(1e-3));
    CHECK(f(1, band + 2) < expected - 3.0);
  }

  TEST_CASE("too-short and non-finite waveforms are rejected") {
    std::mt19937_64 rng(0);
    ToyAudioBackend backend(ToyBackendOptions{}, 4, rng);
    CHECK_THROWS(backend.frontend(Waveform(100, 0.0f)));
    Waveform w(640, 0.0f);
    w[3] = std::nanf("");
    CHECK_THROWS(backend.frontend(w));
  }

  TEST_CASE("stack gradients match finite differences") {
    std::mt19937_64 rng(4);
    ToyBackendOptions opt;
    opt.bands = 5;
    opt.depth = 2;
    ToyAudioBackend backend(opt, 4, rng);
    const Eigen::MatrixXd x = fixtures::random_frames(3, 5, rng);
    const Eigen::MatrixXd c = fixtures::random_frames(3, 4, rng);
    auto loss = [&] { return (backend.forward(x).output().array() * c.array()).sum(); };
    for (auto* p : backend.parameters()) p->zero_grad();
    backend.backward(x, backend.forward(x), c);
    CHECK(worst_parameter_error(backend.parameters(), loss, rng, 100) < 1e-4);
  }
}

TEST_SUITE("toy text backend") {
  TEST_CASE("tokenizer lowercases and splits on punctuation") {
    const auto t = ToyTextBackend::tokenize("I'm  NOT sure, really.");
    CHECK(t == std::vector<std::string>{"i", "m", "not", "sure", "really"});
  }

  TEST_CASE("row zero is the class token and output is deterministic") {
    std::mt19937_64 rng(0);
    ToyTextBackend backend(ToyBackendOptions{}, 12, rng);
    const auto f = backend.frontend("I want to buy it.");
    CHECK(f.rows.size() == f.tokens.size() + 1);
    const auto a = encode_text("I want to buy it.", backend);
    const auto b = encode_text("I want to buy it.", backend);
    CHECK(a.length() == 6);
    CHECK(a.values == b.values);
    CHECK(encode_text("I do not want to buy it.", backend).values.row(0) != a.values.row(0));
  }

  TEST_CASE("empty sentences are rejected") {
    std::mt19937_64 rng(0);
    ToyTextBackend backend(ToyBackendOptions{}, 4, rng);
    CHECK_THROWS(backend.frontend(""));
    CHECK_THROWS(backend.frontend(" ... "));
  }

  TEST_CASE("embedding and stack gradients match finite differences") {
    std::mt19937_64 rng(6);
    ToyBackendOptions opt;
    opt.hash_buckets = 32;
    opt.depth = 2;
    ToyTextBackend backend(opt, 5, rng);
    const auto f = backend.frontend("My emotions are awake.");
    const Eigen::MatrixXd c = fixtures::random_frames(static_cast<Eigen::Index>(f.rows.size()), 5, rng);
    auto loss = [&] { return (backend.forward(f).output().array() * c.array()).sum(); };
    for (auto* p : backend.parameters()) p->zero_grad();
    backend.backward(f, backend.forward(f), c);
    CHECK(worst_parameter_error(backend.parameters(), loss, rng, 200) < 1e-4);
  }
}

TEST_SUITE("backend factory") {
  TEST_CASE("unknown backend is a validation error") {
    RunConfig c = fixtures::tiny_config();
    c.backend = "bogus";
    std::mt19937_64 rng(0);
    CHECK_THROWS_AS(make_backends(c, rng), ValidationError);
  }

  TEST_CASE("pretrained directory without a checkpoint fails") {
    RunConfig c = fixtures::tiny_config();
    c.backend = "pretrained:/nonexistent-dir";
    std::mt19937_64 rng(0);
    CHECK_THROWS(make_backends(c, rng));
  }
}
