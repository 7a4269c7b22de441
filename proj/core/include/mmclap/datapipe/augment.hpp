// core/include/mmclap/datapipe/augment.hpp

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

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmclap/taxonomy.hpp"

namespace mmclap::datapipe {

struct PromptRequest {
  std::string emotion_description;
  std::string prohibited_word;
  int n_paraphrases = 10;
};

/// Instantiates the paraphrasing prompt template. Throws on an empty description or
/// prohibited word, or n_paraphrases < 1.
std::string render_prompt(const PromptRequest& request);

/// Text-in, text-out completion service.
class LlmClient {
 public:
  virtual ~LlmClient() = default;
  /// Throws RetriableError on transport or service failure.
  virtual std::string complete(const std::string& prompt) = 0;
  virtual bool is_stub() const { return false; }
};

/// Offline client: reads the description and prohibited word back out of the prompt
/// and emits numbered template variants with the word replaced by a synonym.
class StubLlmClient final : public LlmClient {
 public:
  std::string complete(const std::string& prompt) override;
  bool is_stub() const override { return true; }
};

class FunctionLlmClient final : public LlmClient {
 public:
  explicit FunctionLlmClient(std::function<std::string(const std::string&)> fn) : fn_(std::move(fn)) {}
  std::string complete(const std::string& prompt) override { return fn_(prompt); }

 private:
  std::function<std::string(const std::string&)> fn_;
};

/// POSTs {"prompt": ...} to an http:// endpoint; accepts {"text": ...} JSON or a plain-text body.
class HttpLlmClient final : public LlmClient {
 public:
  explicit HttpLlmClient(std::string endpoint, int timeout_seconds = 60);
  std::string complete(const std::string& prompt) override;

 private:
  std::string base_;
  std::string path_;
  int timeout_seconds_;
};

inline constexpr const char* kLlmEndpointEnv = "MMCLAP_LLM_ENDPOINT";

/// HttpLlmClient when MMCLAP_LLM_ENDPOINT is set, else StubLlmClient.
std::unique_ptr<LlmClient> make_llm_client_from_env();

enum class Provenance { Llm, ManualFix, Stub };
std::string to_string(Provenance provenance);

struct AugmentationRecord {
  std::string source_task;
  int polarity = 0;
  std::string original_text;
  std::string prohibited_word;
  std::vector<std::string> variants;  // accepted, distinct, free of the prohibited word
  std::vector<std::string> rejected;  // contained the prohibited word; need a manual fix
  Provenance provenance = Provenance::Llm;
  bool partial = false;               // fewer than the requested number of clean variants
};

/// One paraphrase per non-empty line; leading "1.", "2)", "-", "*" markers are stripped.
std::vector<std::string> parse_paraphrases(const std::string& response);

/// Case-insensitive substring test.
bool contains_word(const std::string& text, const std::string& word);

AugmentationRecord paraphrase_task(const PromptRequest& request, LlmClient& client,
                                   const std::string& source_task = {}, int polarity = 0);

/// Calls paraphrase_task, retrying RetriableError up to `attempts` times.
AugmentationRecord paraphrase_with_retries(const PromptRequest& request, LlmClient& client,
                                           const std::string& source_task, int polarity, int attempts = 3);

/// Paraphrases both poles of every task.
std::vector<AugmentationRecord> augment_taxonomy(const EmotionTaxonomy& taxonomy, LlmClient& client,
                                                 int n_paraphrases = 10);

/// Copies accepted variants into the taxonomy's paraphrase lists (deduplicated).
void apply_augmentations(EmotionTaxonomy& taxonomy, const std::vector<AugmentationRecord>& records);

nlohmann::json to_json(const AugmentationRecord& record);
AugmentationRecord augmentation_from_json(const nlohmann::json& doc);
std::vector<AugmentationRecord> load_augmentations(const std::filesystem::path& path);

}  // namespace mmclap::datapipe
