// core/src/datapipe/augment.cpp

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

#include "mmclap/datapipe/augment.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mmclap/error.hpp"

namespace mmclap::datapipe {
namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string number_word(int n) {
  static const char* words[] = {"zero",    "one",     "two",       "three",    "four",    "five",    "six",
                                "seven",   "eight",   "nine",      "ten",      "eleven",  "twelve",  "thirteen",
                                "fourteen", "fifteen", "sixteen",  "seventeen", "eighteen", "nineteen", "twenty"};
  return n >= 0 && n <= 20 ? words[n] : std::to_string(n);
}

int parse_number_word(const std::string& w) {
  for (int n = 0; n <= 20; ++n)
    if (number_word(n) == w) return n;
  try {
    return std::stoi(w);
  } catch (const std::exception&) {
    return 10;
  }
}

const std::map<std::string, std::string>& synonyms() {
  static const std::map<std::string, std::string> table = {
      {"uncomfortable", "uneasy"},    {"pleasant", "delighted"},  {"asleep", "drowsy"},
      {"awake", "alert"},             {"subservient", "obedient"}, {"dominant", "commanding"},
      {"distrust", "doubt"},          {"trust", "believe"},       {"indifferent", "uninvolved"},
      {"interested", "curious"},      {"negative", "pessimistic"}, {"positive", "optimistic"},
  };
  return table;
}

const std::vector<std::string>& framings() {
  static const std::vector<std::string> f = {
      "{s}",          "Right now, {s}",    "{s} That is how it is.", "Honestly, {s}",  "I would say that {s}",
      "To be frank, {s}", "At this moment, {s}", "It seems that {s}",   "Today, {s}", "Deep down, {s}",
  };
  return f;
}

std::string replace_word(const std::string& text, const std::string& word, const std::string& with) {
  if (word.empty()) return text;
  const std::string lt = lower(text), lw = lower(word);
  std::string out;
  std::size_t pos = 0;
  for (std::size_t hit; (hit = lt.find(lw, pos)) != std::string::npos; pos = hit + lw.size())
    out += text.substr(pos, hit - pos) + with;
  return out + text.substr(pos);
}

std::string after_prefix(const std::string& line, const std::string& prefix) {
  return line.rfind(prefix, 0) == 0 ? trim(line.substr(prefix.size())) : std::string();
}

}  // namespace

std::string render_prompt(const PromptRequest& request) {
  if (trim(request.emotion_description).empty())
    throw ValidationError("emotion_description", "must not be empty");
  if (trim(request.prohibited_word).empty()) throw ValidationError("prohibited_word", "must not be empty");
  if (request.n_paraphrases < 1) throw ValidationError("n_paraphrases", "must be >= 1");
  const std::string noun = request.n_paraphrases == 1 ? "sentence" : "sentences";
  return "You are an imaginative assistant.\n"
         "Given the emotion description, please generate " +
         number_word(request.n_paraphrases) + " paraphrase " + noun +
         " in Japanese.\n"
         "Note that you cannot add the prohibited word.\n"
         "\n"
         "### Input and output\n"
         "Emotion description: " +
         request.emotion_description +
         "\n"
         "Prohibited word: " +
         request.prohibited_word +
         "\n"
         "Paraphrase sentences:";
}

std::string StubLlmClient::complete(const std::string& prompt) {
  std::istringstream in(prompt);
  std::string line, description, word;
  int n = 10;
  while (std::getline(in, line)) {
    if (auto v = after_prefix(line, "Emotion description:"); !v.empty()) description = v;
    if (auto v = after_prefix(line, "Prohibited word:"); !v.empty()) word = v;
    if (auto p = line.find("generate "); p != std::string::npos) {
      std::istringstream words(line.substr(p + 9));
      std::string w;
      words >> w;
      n = parse_number_word(w);
    }
  }
  if (description.empty()) return {};
  auto it = synonyms().find(lower(word));
  const std::string base = replace_word(description, word, it != synonyms().end() ? it->second : "hard to name");
  std::ostringstream out;
  for (int i = 0; i < n; ++i) {
    const std::string& f = framings()[static_cast<std::size_t>(i) % framings().size()];
    std::string s = base;
    const auto slot = f.find("{s}");
    const bool initial = slot == 0;
    if (!initial && s.size() > 1 && !(s[0] == 'I' && (s[1] == ' ' || s[1] == '\'')))
      s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
    std::string sentence = f.substr(0, slot) + s + f.substr(slot + 3);
    if (i >= static_cast<int>(framings().size())) sentence += " (" + std::to_string(i + 1) + ")";
    out << i + 1 << ". " << sentence << "\n";
  }
  return out.str();
}

std::string to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::Llm: return "llm";
    case Provenance::ManualFix: return "manual_fix";
    case Provenance::Stub: return "stub";
  }
  return "llm";
}

std::vector<std::string> parse_paraphrases(const std::string& response) {
  std::vector<std::string> out;
  std::istringstream in(response);
  std::string line;
  while (std::getline(in, line)) {
    std::string s = trim(line);
    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > 0 && i < s.size() && (s[i] == '.' || s[i] == ')' || s[i] == ':')) {
      s = trim(s.substr(i + 1));
    } else if (!s.empty() && (s[0] == '-' || s[0] == '*')) {
      s = trim(s.substr(1));
    } else if (s.rfind("\xE3\x83\xBB", 0) == 0 || s.rfind("\xE2\x80\xA2", 0) == 0) {  // katakana middle dot, bullet
      s = trim(s.substr(3));
    }
    if (s.empty() || s.back() == ':') continue;
    out.push_back(s);
  }
  return out;
}

bool contains_word(const std::string& text, const std::string& word) {
  return !word.empty() && lower(text).find(lower(word)) != std::string::npos;
}

AugmentationRecord paraphrase_task(const PromptRequest& request, LlmClient& client, const std::string& source_task,
                                   int polarity) {
  const std::string prompt = render_prompt(request);
  const std::string response = client.complete(prompt);
  AugmentationRecord rec;
  rec.source_task = source_task;
  rec.polarity = polarity;
  rec.original_text = request.emotion_description;
  rec.prohibited_word = request.prohibited_word;
  rec.provenance = client.is_stub() ? Provenance::Stub : Provenance::Llm;
  std::set<std::string> seen{request.emotion_description};
  for (auto& s : parse_paraphrases(response)) {
    if (contains_word(s, request.prohibited_word)) {
      rec.rejected.push_back(s);
      continue;
    }
    if (!seen.insert(s).second) continue;
    if (static_cast<int>(rec.variants.size()) < request.n_paraphrases) rec.variants.push_back(s);
  }
  rec.partial = static_cast<int>(rec.variants.size()) < request.n_paraphrases;
  return rec;
}

AugmentationRecord paraphrase_with_retries(const PromptRequest& request, LlmClient& client,
                                           const std::string& source_task, int polarity, int attempts) {
  for (int a = 1;; ++a) {
    try {
      return paraphrase_task(request, client, source_task, polarity);
    } catch (const RetriableError&) {
      if (a >= attempts) throw;
    }
  }
}

std::vector<AugmentationRecord> augment_taxonomy(const EmotionTaxonomy& taxonomy, LlmClient& client,
                                                 int n_paraphrases) {
  std::vector<AugmentationRecord> out;
  for (const auto& task : taxonomy.tasks)
    for (int p = 0; p < 2; ++p)
      out.push_back(paraphrase_with_retries({task.description(p), task.keyword(p), n_paraphrases}, client,
                                            task.name, p));
  return out;
}

void apply_augmentations(EmotionTaxonomy& taxonomy, const std::vector<AugmentationRecord>& records) {
  for (const auto& rec : records) {
    auto* task = taxonomy.find(rec.source_task);
    if (!task) throw ValidationError("source_task", "unknown task '" + rec.source_task + "'");
    auto& pool = task->paraphrases(rec.polarity);
    for (const auto& v : rec.variants)
      if (v != task->description(rec.polarity) && std::find(pool.begin(), pool.end(), v) == pool.end())
        pool.push_back(v);
  }
}

nlohmann::json to_json(const AugmentationRecord& record) {
  return {{"source_task", record.source_task},
          {"polarity", record.polarity},
          {"original_text", record.original_text},
          {"prohibited_word", record.prohibited_word},
          {"variants", record.variants},
          {"rejected", record.rejected},
          {"provenance", to_string(record.provenance)},
          {"partial", record.partial}};
}

AugmentationRecord augmentation_from_json(const nlohmann::json& doc) {
  AugmentationRecord rec;
  try {
    rec.source_task = doc.at("source_task").get<std::string>();
    rec.polarity = doc.at("polarity").get<int>();
    rec.original_text = doc.at("original_text").get<std::string>();
    rec.prohibited_word = doc.at("prohibited_word").get<std::string>();
    rec.variants = doc.at("variants").get<std::vector<std::string>>();
    rec.rejected = doc.value("rejected", std::vector<std::string>{});
    rec.partial = doc.value("partial", false);
    const std::string prov = doc.value("provenance", std::string("llm"));
    if (prov == "llm") rec.provenance = Provenance::Llm;
    else if (prov == "manual_fix") rec.provenance = Provenance::ManualFix;
    else if (prov == "stub") rec.provenance = Provenance::Stub;
    else throw ValidationError("provenance", "unknown value '" + prov + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("augmentation", e.what());
  }
  if (rec.polarity != 0 && rec.polarity != 1) throw ValidationError("polarity", "must be 0 or 1");
  for (const auto& v : rec.variants)
    if (contains_word(v, rec.prohibited_word))
      throw ValidationError("variants", "'" + v + "' contains the prohibited word '" + rec.prohibited_word + "'");
  return rec;
}

std::vector<AugmentationRecord> load_augmentations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<AugmentationRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(n, e.what());
    }
    if (doc.contains("meta")) continue;
    out.push_back(augmentation_from_json(doc));
  }
  return out;
}

}  // namespace mmclap::datapipe
