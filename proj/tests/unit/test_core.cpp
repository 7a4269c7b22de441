// tests/unit/test_core.cpp

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

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "mmclap/archive.hpp"
#include "mmclap/audio.hpp"
#include "mmclap/config.hpp"
#include "mmclap/digest.hpp"
#include "mmclap/error.hpp"
#include "mmclap/records.hpp"
#include "mmclap/taxonomy.hpp"

using namespace mmclap;

namespace {

bool has_violation(const ValidationReport& r, const std::string& needle) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

const char* kThreeLines =
    R"({"id":"u1","audio_ref":"a/u1.wav","speaker":"s1","session":1,"raw_scores":{"t":{"a1":3,"a2":4}}}
{"id":"u2","audio_ref":"a/u2.wav","speaker":"s1","session":2,"raw_scores":{"t":{"a1":5,"a2":6}}}
{"id":"u3","audio_ref":[0.0,0.5,-0.5],"speaker":"s2","session":3,"raw_scores":{}}
)";

}  // namespace

TEST_SUITE("taxonomy") {
  TEST_CASE("default six-axis taxonomy validates") {
    const auto t = default_emotion_taxonomy();
    CHECK(t.size() == 6);
    CHECK(validate_taxonomy(t).ok());
    CHECK(t.task("sleepy-aroused").description(1) == "My emotions are awake.");
    CHECK(t.task("doubtful-credible").keyword(0) == "distrust");
  }

  TEST_CASE("identical poles are a degenerate pair") {
    auto t = default_emotion_taxonomy();
    t.tasks[2].description_pos = t.tasks[2].description_neg;
    const auto r = validate_taxonomy(t);
    CHECK_FALSE(r.ok());
    CHECK(has_violation(r, "degenerate bipolar pair"));
  }

  TEST_CASE("empty task list is rejected") {
    EmotionTaxonomy t;
    CHECK(has_violation(validate_taxonomy(t), "K must be >= 1"));
  }

  TEST_CASE("duplicate names and paraphrases are reported") {
    auto t = default_emotion_taxonomy();
    t.tasks[1].name = t.tasks[0].name;
    t.tasks[0].paraphrases_pos = {"x", "x"};
    const auto r = validate_taxonomy(t);
    CHECK(has_violation(r, "duplicate task name"));
    CHECK(has_violation(r, "duplicate paraphrase"));
  }

  TEST_CASE("validation does not depend on task order") {
    auto t = default_emotion_taxonomy();
    t.tasks[0].description_pos = t.tasks[0].description_neg;
    t.tasks[3].paraphrases_neg = {""};
    auto shuffled = t;
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      std::shuffle(shuffled.tasks.begin(), shuffled.tasks.end(), rng);
      CHECK(validate_taxonomy(shuffled).violations == validate_taxonomy(t).violations);
    }
  }

  TEST_CASE("json round trip keeps the digest") {
    auto t = default_emotion_taxonomy();
    t.tasks[0].paraphrases_neg = {"I feel uneasy."};
    const auto back = taxonomy_from_json(to_json(t));
    CHECK(taxonomy_digest(back) == taxonomy_digest(t));
    CHECK(back.tasks[0].paraphrases_neg == t.tasks[0].paraphrases_neg);
    CHECK(t.tasks[0].text_pool(0).size() == 2);
  }
}

TEST_SUITE("records") {
  TEST_CASE("three well-formed lines give three records") {
    std::istringstream in(kThreeLines);
    const auto records = parse_manifest(in);
    REQUIRE(records.size() == 3);
    CHECK(records[1].raw_scores.at("t").at("a2") == 6);
    CHECK(records[2].audio_ref.is_inline());
    CHECK(records[2].audio_ref.samples.size() == 3);
  }

  TEST_CASE("out-of-range score names line and field") {
    std::istringstream in(
        "\n"
        R"({"id":"u1","audio_ref":"x.wav","speaker":"s","session":1,"raw_scores":{"t":{"a1":9}}})");
    try {
      parse_manifest(in);
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("line 2") != std::string::npos);
      CHECK(msg.find("raw_scores.t.a1") != std::string::npos);
    }
  }

  TEST_CASE("malformed json is a parse error with its line") {
    std::istringstream in("{\"id\": \n");
    try {
      parse_manifest(in);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
    }
  }

  TEST_CASE("session outside the declared count is rejected") {
    std::istringstream in(R"({"id":"u1","audio_ref":"x.wav","speaker":"s","session":7,"raw_scores":{}})");
    CHECK_THROWS_AS(parse_manifest(in, 6), ValidationError);
  }

  TEST_CASE("empty manifest is an empty list") {
    std::istringstream in("");
    CHECK(parse_manifest(in).empty());
  }

  TEST_CASE("serialization round trips") {
    std::istringstream in(kThreeLines);
    const auto records = parse_manifest(in);
    std::istringstream again(serialize_manifest(records));
    CHECK(parse_manifest(again) == records);
  }

  TEST_CASE("missing task reads as abstain") {
    LabeledUtterance u;
    u.labels["a"] = Label::Positive;
    CHECK(u.label("a") == Label::Positive);
    CHECK(u.label("b") == Label::Abstain);
  }
}

TEST_SUITE("config") {
  TEST_CASE("defaults carry the reference hyperparameters") {
    const RunConfig c;
    CHECK(c.epochs == 300);
    CHECK(c.batch_size == 64);
    CHECK(c.learning_rate == doctest::Approx(1e-6));
    CHECK(c.encoder_dim == 768);
    CHECK(c.projection_dim == 512);
    CHECK(c.temperature_init == doctest::Approx(1.0 / 0.07));
    CHECK(c.target_mode == TargetMode::LabelAware);
    CHECK(validate(c).empty());
  }

  TEST_CASE("overlay keeps unspecified fields and rejects unknown keys") {
    const auto c = config_from_json({{"epochs", 5}, {"toy", {{"hop", 160}}}});
    CHECK(c.epochs == 5);
    CHECK(c.toy.hop == 160);
    CHECK(c.batch_size == 64);
    CHECK_THROWS_AS(config_from_json({{"epochz", 5}}), ValidationError);
    CHECK_THROWS_AS(config_from_json({{"epochs", "five"}}), ValidationError);
  }

  TEST_CASE("json round trip preserves config and digest") {
    RunConfig c;
    c.seed = 42;
    c.target_mode = TargetMode::Identity;
    c.toy.depth = 2;
    const auto back = config_from_json(to_json(c));
    CHECK(back == c);
    CHECK(config_digest(back) == config_digest(c));
    RunConfig d = c;
    d.seed = 43;
    CHECK(config_digest(d) != config_digest(c));
  }

  TEST_CASE("validation reports the field") {
    RunConfig c;
    c.batch_size = 0;
    const auto errors = validate(c);
    REQUIRE_FALSE(errors.empty());
    CHECK(errors.front().rfind("batch_size", 0) == 0);
  }

  TEST_CASE("component seeds are distinct and stable") {
    CHECK(component_seed(1, "model") == component_seed(1, "model"));
    CHECK(component_seed(1, "model") != component_seed(1, "trainer"));
    CHECK(component_seed(1, "model") != component_seed(2, "model"));
  }
}

TEST_SUITE("io") {
  TEST_CASE("wav round trip within 16-bit quantization") {
    fixtures::TempDir dir("wav");
    Waveform w(1000);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = static_cast<float>(0.5 * std::sin(0.01 * i));
    write_wav(dir / "x.wav", w);
    const auto back = read_wav(dir / "x.wav");
    REQUIRE(back.size() == w.size());
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(back[i] - w[i]) < 1.0 / 32767.0);
  }

  TEST_CASE("inline audio refs need no file") {
    AudioRef ref;
    ref.samples = {0.1f, 0.2f};
    CHECK(load_audio(ref, "/nonexistent") == ref.samples);
  }

  TEST_CASE("tensor archive round trip") {
    fixtures::TempDir dir("archive");
    TensorArchive a;
    a.header = {{"kind", "test"}};
    Eigen::MatrixXd m(2, 3);
    m << 1, 2, 3, 4, 5, 6.5;
    a.tensors.emplace_back("w", m);
    write_archive(dir / "a.bin", a);
    const auto b = read_archive(dir / "a.bin");
    CHECK(b.header.at("kind") == "test");
    CHECK(b.tensor("w") == m);
    CHECK_FALSE(b.has("missing"));
    CHECK_FALSE(std::filesystem::exists(dir / "a.bin.tmp"));
  }

  TEST_CASE("truncated archive is rejected") {
    fixtures::TempDir dir("archive");
    write_file_atomic(dir / "bad.bin", "MMCLAPCK");
    CHECK_THROWS(read_archive(dir / "bad.bin"));
  }

  TEST_CASE("digest is stable") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(digest_hex("abc") == digest_hex("abc"));
    CHECK(digest_hex("abc") != digest_hex("abd"));
  }
}
