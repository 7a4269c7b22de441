// tests/unit/test_cli.cpp

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

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "fixtures.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = mmclap::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

nlohmann::json first_line(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return nlohmann::json::parse(line);
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors") {
    auto r = run({"train", "--no-such-flag"});
    CHECK(r.code == mmclap::cli::kExitUsage);
    CHECK(r.err.find("--manifest") != std::string::npos);
    CHECK(run({}).code == mmclap::cli::kExitUsage);
    CHECK(run({"--help"}).code == mmclap::cli::kExitOk);
  }

  TEST_CASE("invalid configuration names the field") {
    fixtures::TempDir dir("cli-bad");
    std::ofstream(dir / "bad.json") << R"({"batch_size": 0})";
    const auto r = run({"synth", "--config", (dir / "bad.json").string(), "--out", (dir / "d").string()});
    CHECK(r.code == mmclap::cli::kExitError);
    CHECK(r.err.find("batch_size") != std::string::npos);
  }

  TEST_CASE("synth, train, zero-shot, eval and compare") {
    fixtures::TempDir dir("cli");
    const auto d = [&](const std::string& n) { return (dir / n).string(); };
    std::ofstream(dir / "cfg.json")
        << R"({"epochs": 40, "batch_size": 32, "learning_rate": 0.002, "encoder_dim": 24, "projection_dim": 12})";

    REQUIRE(run({"synth", "--items", "240", "--seed", "3", "--out", d("data")}).code == 0);
    const auto first = slurp(dir / "data/manifest.jsonl");
    REQUIRE(run({"synth", "--items", "240", "--seed", "3", "--out", d("data2")}).code == 0);
    CHECK(slurp(dir / "data2/manifest.jsonl") == first);

    auto r = run({"augment", "--stub", "--taxonomy", d("data/taxonomy.json"), "--out", d("aug.jsonl")});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(first_line(dir / "aug.jsonl")["meta"]["kind"] == "augmentations");

    r = run({"train", "--config", d("cfg.json"), "--manifest", d("data/manifest.jsonl"), "--augmentations",
             d("aug.jsonl"), "--out", d("run")});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(std::filesystem::exists(dir / "run/checkpoint.bin"));
    const auto log_meta = first_line(dir / "run/train_log.jsonl")["meta"];
    CHECK(log_meta.contains("config_digest"));

    r = run({"zero-shot", "--checkpoint", d("run"), "--manifest", d("data/manifest.jsonl"), "--prompts",
             d("data/heldout.prompts.json"), "--prompt-set", "composed", "--out", d("zs.jsonl")});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const auto zs_meta = first_line(dir / "zs.jsonl")["meta"];
    CHECK(zs_meta["kind"] == "zero-shot");
    CHECK(zs_meta["prompt_set"] == "composed");
    CHECK(zs_meta["config_digest"] == log_meta["config_digest"]);

    r = run({"zero-shot", "--checkpoint", d("run"), "--manifest", d("data/manifest.jsonl"), "--prompts",
             d("data/heldout.prompts.json"), "--prompt-set", "composed", "--out", d("zs2.jsonl")});
    CHECK(slurp(dir / "zs2.jsonl") == slurp(dir / "zs.jsonl"));

    r = run({"eval", "--manifest", d("data/manifest.jsonl"), "--task", "purchase-intention", "--predictions",
             d("zs.jsonl"), "--out", d("metrics.json")});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(r.out.find("zero-shot") != std::string::npos);
    const auto metrics = nlohmann::json::parse(slurp(dir / "metrics.json"));
    CHECK(metrics["ua"].get<double>() > metrics["chance_ua"].get<double>());

    r = run({"train-baseline", "--config", d("cfg.json"), "--manifest", d("data/manifest.jsonl"), "--task",
             "purchase-intention", "--out", d("base")});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(first_line(dir / "base/predictions.jsonl")["meta"]["kind"] == "supervised");

    r = run({"compare", "--manifest", d("data/manifest.jsonl"), "--task", "purchase-intention", "--predictions",
             "a=" + d("zs.jsonl"), "--predictions", "b=" + d("zs2.jsonl"), "--out", d("same.json")});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(nlohmann::json::parse(slurp(dir / "same.json"))["sign_test"]["p_value"] == 1.0);

    r = run({"compare", "--manifest", d("data/manifest.jsonl"), "--task", "purchase-intention", "--predictions",
             d("base/predictions.jsonl"), "--predictions", d("zs.jsonl"), "--out", d("cmp.json")});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(r.out.find("Sign test") != std::string::npos);
  }
}
