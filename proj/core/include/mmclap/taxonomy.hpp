// core/include/mmclap/taxonomy.hpp

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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mmclap {

/// One bipolar emotion axis. Polarity 0 is the negative pole, 1 the positive pole.
struct EmotionTask {
  std::string name;
  std::string description_neg;
  std::string description_pos;
  std::vector<std::string> paraphrases_neg;
  std::vector<std::string> paraphrases_pos;
  // Word a paraphrase of the description must avoid. Empty means "last word of the description".
  std::string keyword_neg;
  std::string keyword_pos;

  const std::string& description(int polarity) const;
  const std::vector<std::string>& paraphrases(int polarity) const;
  std::vector<std::string>& paraphrases(int polarity);
  std::string keyword(int polarity) const;

  /// Description followed by its paraphrases; the texts a training pair may draw from.
  std::vector<std::string> text_pool(int polarity) const;
};

struct EmotionTaxonomy {
  std::vector<EmotionTask> tasks;

  std::size_t size() const noexcept { return tasks.size(); }
  const EmotionTask& task(const std::string& name) const;
  const EmotionTask* find(const std::string& name) const noexcept;
  EmotionTask* find(const std::string& name) noexcept;
  std::vector<std::string> names() const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

// Violations are returned sorted so the report does not depend on task order.
ValidationReport validate_taxonomy(const EmotionTaxonomy& taxonomy);

nlohmann::json to_json(const EmotionTaxonomy& taxonomy);
EmotionTaxonomy taxonomy_from_json(const nlohmann::json& doc);

EmotionTaxonomy load_taxonomy(const std::filesystem::path& path);
void save_taxonomy(const std::filesystem::path& path, const EmotionTaxonomy& taxonomy);

/// Digest of the canonical JSON form; stored in checkpoints to detect taxonomy drift.
std::string taxonomy_digest(const EmotionTaxonomy& taxonomy);

/// English renderings of the six-axis description table used by the synthetic corpus.
EmotionTaxonomy default_emotion_taxonomy();

}  // namespace mmclap
