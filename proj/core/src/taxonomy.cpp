// core/src/taxonomy.cpp

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

#include "mmclap/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "mmclap/archive.hpp"
#include "mmclap/digest.hpp"
#include "mmclap/error.hpp"

namespace mmclap {

namespace {

void check_polarity(int polarity) {
  if (polarity != 0 && polarity != 1) throw Error("polarity must be 0 or 1");
}

std::string last_word(const std::string& text) {
  std::string word;
  std::string current;
  for (char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc) || uc >= 0x80 || c == '-' || c == '\'') {
      current.push_back(c);
    } else if (!current.empty()) {
      word = current;
      current.clear();
    }
  }
  return current.empty() ? word : current;
}

std::vector<std::string> string_list(const nlohmann::json& doc, const char* key,
                                     const std::string& where) {
  std::vector<std::string> out;
  if (!doc.contains(key)) return out;
  const auto& arr = doc.at(key);
  if (!arr.is_array()) throw ValidationError(where + "." + key, "expected an array of strings");
  for (const auto& item : arr) {
    if (!item.is_string()) throw ValidationError(where + "." + key, "expected an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

const std::string& EmotionTask::description(int polarity) const {
  check_polarity(polarity);
  return polarity == 0 ? description_neg : description_pos;
}

const std::vector<std::string>& EmotionTask::paraphrases(int polarity) const {
  check_polarity(polarity);
  return polarity == 0 ? paraphrases_neg : paraphrases_pos;
}

std::vector<std::string>& EmotionTask::paraphrases(int polarity) {
  check_polarity(polarity);
  return polarity == 0 ? paraphrases_neg : paraphrases_pos;
}

std::string EmotionTask::keyword(int polarity) const {
  check_polarity(polarity);
  const std::string& explicit_word = polarity == 0 ? keyword_neg : keyword_pos;
  if (!explicit_word.empty()) return explicit_word;
  return last_word(description(polarity));
}

std::vector<std::string> EmotionTask::text_pool(int polarity) const {
  std::vector<std::string> pool{description(polarity)};
  const auto& extra = paraphrases(polarity);
  pool.insert(pool.end(), extra.begin(), extra.end());
  return pool;
}

const EmotionTask* EmotionTaxonomy::find(const std::string& name) const noexcept {
  for (const auto& t : tasks)
    if (t.name == name) return &t;
  return nullptr;
}

EmotionTask* EmotionTaxonomy::find(const std::string& name) noexcept {
  for (auto& t : tasks)
    if (t.name == name) return &t;
  return nullptr;
}

const EmotionTask& EmotionTaxonomy::task(const std::string& name) const {
  if (const auto* t = find(name)) return *t;
  throw Error("unknown emotion task '" + name + "'");
}

std::vector<std::string> EmotionTaxonomy::names() const {
  std::vector<std::string> out;
  out.reserve(tasks.size());
  for (const auto& t : tasks) out.push_back(t.name);
  return out;
}

ValidationReport validate_taxonomy(const EmotionTaxonomy& taxonomy) {
  ValidationReport report;
  auto& v = report.violations;
  if (taxonomy.tasks.empty()) v.push_back("K must be >= 1");

  std::set<std::string> seen;
  for (const auto& t : taxonomy.tasks) {
    const std::string label = t.name.empty() ? "<unnamed>" : t.name;
    if (t.name.empty()) v.push_back("task with empty name");
    if (!t.name.empty() && !seen.insert(t.name).second)
      v.push_back("duplicate task name '" + t.name + "'");
    if (t.description_neg.empty()) v.push_back(label + ": empty description for polarity 0");
    if (t.description_pos.empty()) v.push_back(label + ": empty description for polarity 1");
    if (!t.description_neg.empty() && t.description_neg == t.description_pos)
      v.push_back(label + ": degenerate bipolar pair");
    for (int p = 0; p < 2; ++p) {
      const auto& list = t.paraphrases(p);
      std::set<std::string> unique;
      for (const auto& s : list) {
        if (s.empty()) v.push_back(label + ": empty paraphrase for polarity " + std::to_string(p));
        if (!unique.insert(s).second)
          v.push_back(label + ": duplicate paraphrase for polarity " + std::to_string(p) + " '" +
                      s + "'");
      }
    }
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return report;
}

nlohmann::json to_json(const EmotionTaxonomy& taxonomy) {
  nlohmann::json tasks = nlohmann::json::array();
  for (const auto& t : taxonomy.tasks) {
    nlohmann::json doc{{"name", t.name},
                       {"description_neg", t.description_neg},
                       {"description_pos", t.description_pos}};
    if (!t.paraphrases_neg.empty()) doc["paraphrases_neg"] = t.paraphrases_neg;
    if (!t.paraphrases_pos.empty()) doc["paraphrases_pos"] = t.paraphrases_pos;
    if (!t.keyword_neg.empty()) doc["keyword_neg"] = t.keyword_neg;
    if (!t.keyword_pos.empty()) doc["keyword_pos"] = t.keyword_pos;
    tasks.push_back(std::move(doc));
  }
  return {{"tasks", tasks}};
}

EmotionTaxonomy taxonomy_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("tasks") || !doc.at("tasks").is_array())
    throw ValidationError("tasks", "taxonomy document must hold a 'tasks' array");
  EmotionTaxonomy taxonomy;
  std::size_t index = 0;
  for (const auto& entry : doc.at("tasks")) {
    const std::string where = "tasks[" + std::to_string(index++) + "]";
    if (!entry.is_object()) throw ValidationError(where, "expected an object");
    EmotionTask t;
    auto str = [&](const char* key, bool required) -> std::string {
      if (!entry.contains(key)) {
        if (required) throw ValidationError(where + "." + key, "missing field");
        return {};
      }
      if (!entry.at(key).is_string()) throw ValidationError(where + "." + key, "expected a string");
      return entry.at(key).get<std::string>();
    };
    t.name = str("name", true);
    t.description_neg = str("description_neg", true);
    t.description_pos = str("description_pos", true);
    t.keyword_neg = str("keyword_neg", false);
    t.keyword_pos = str("keyword_pos", false);
    t.paraphrases_neg = string_list(entry, "paraphrases_neg", where);
    t.paraphrases_pos = string_list(entry, "paraphrases_pos", where);
    taxonomy.tasks.push_back(std::move(t));
  }
  return taxonomy;
}

EmotionTaxonomy load_taxonomy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open taxonomy '" + path.string() + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, path.string() + ": " + e.what());
  }
  auto taxonomy = taxonomy_from_json(doc);
  auto report = validate_taxonomy(taxonomy);
  if (!report.ok()) throw ValidationError("tasks", report.violations.front());
  return taxonomy;
}

void save_taxonomy(const std::filesystem::path& path, const EmotionTaxonomy& taxonomy) {
  write_file_atomic(path, to_json(taxonomy).dump(2) + "\n");
}

std::string taxonomy_digest(const EmotionTaxonomy& taxonomy) {
  return digest_hex(to_json(taxonomy).dump());
}

EmotionTaxonomy default_emotion_taxonomy() {
  EmotionTaxonomy taxonomy;
  auto add = [&](std::string name, std::string neg, std::string pos) {
    EmotionTask t;
    t.name = std::move(name);
    t.description_neg = std::move(neg);
    t.description_pos = std::move(pos);
    taxonomy.tasks.push_back(std::move(t));
  };
  add("unpleasant-pleasant", "My emotions are uncomfortable.", "My emotions are pleasant.");
  add("sleepy-aroused", "My emotions are asleep.", "My emotions are awake.");
  add("submissive-dominant", "My emotions are subservient.", "My emotions are dominant.");
  add("doubtful-credible", "I distrust.", "I trust.");
  add("indifferent-interested", "I am indifferent.", "I am interested.");
  add("negative-positive", "I am negative.", "I am positive.");
  return taxonomy;
}

}  // namespace mmclap
