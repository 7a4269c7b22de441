// core/src/records.cpp

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

#include "mmclap/records.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "mmclap/archive.hpp"
#include "mmclap/error.hpp"

namespace mmclap {

std::string to_string(Label label) {
  switch (label) {
    case Label::Negative: return "0";
    case Label::Positive: return "1";
    case Label::Abstain: return "ABSTAIN";
  }
  return "?";
}

Label LabeledUtterance::label(const std::string& task) const {
  auto it = labels.find(task);
  return it == labels.end() ? Label::Abstain : it->second;
}

nlohmann::json to_json(const UtteranceRecord& record) {
  nlohmann::json doc;
  doc["id"] = record.id;
  if (record.audio_ref.is_inline())
    doc["audio_ref"] = record.audio_ref.samples;
  else
    doc["audio_ref"] = record.audio_ref.path;
  doc["speaker"] = record.speaker;
  doc["session"] = record.session;
  doc["raw_scores"] = record.raw_scores;
  return doc;
}

UtteranceRecord record_from_json(const nlohmann::json& doc, std::size_t line, int session_count) {
  auto fail = [line](const std::string& field, const std::string& message) -> ValidationError {
    return ValidationError("line " + std::to_string(line) + ": " + field, message);
  };
  if (!doc.is_object()) throw ParseError(line, "expected a JSON object");
  for (const char* key : {"id", "audio_ref", "speaker", "session", "raw_scores"})
    if (!doc.contains(key)) throw fail(key, "missing field");

  UtteranceRecord r;
  if (!doc["id"].is_string() || doc["id"].get<std::string>().empty())
    throw fail("id", "expected a non-empty string");
  r.id = doc["id"].get<std::string>();

  const auto& audio = doc["audio_ref"];
  if (audio.is_string()) {
    r.audio_ref.path = audio.get<std::string>();
    if (r.audio_ref.path.empty()) throw fail("audio_ref", "empty path");
  } else if (audio.is_array()) {
    for (const auto& s : audio) {
      if (!s.is_number()) throw fail("audio_ref", "inline waveform must contain numbers");
      r.audio_ref.samples.push_back(s.get<float>());
    }
    if (r.audio_ref.samples.empty()) throw fail("audio_ref", "inline waveform is empty");
  } else {
    throw fail("audio_ref", "expected a path string or an array of samples");
  }

  if (!doc["speaker"].is_string()) throw fail("speaker", "expected a string");
  r.speaker = doc["speaker"].get<std::string>();

  if (!doc["session"].is_number_integer()) throw fail("session", "expected an integer");
  r.session = doc["session"].get<int>();
  if (r.session < 1 || r.session > session_count)
    throw fail("session", std::to_string(r.session) + " outside [1," +
                              std::to_string(session_count) + "]");

  const auto& scores = doc["raw_scores"];
  if (!scores.is_object()) throw fail("raw_scores", "expected an object");
  for (const auto& [task, per_annotator] : scores.items()) {
    if (!per_annotator.is_object()) throw fail("raw_scores." + task, "expected an object");
    auto& dest = r.raw_scores[task];
    for (const auto& [annotator, value] : per_annotator.items()) {
      const std::string field = "raw_scores." + task + "." + annotator;
      if (!value.is_number_integer()) throw fail(field, "expected an integer score");
      const int score = value.get<int>();
      if (score < kMinScore || score > kMaxScore)
        throw fail(field, std::to_string(score) + " outside [1,7]");
      dest[annotator] = score;
    }
  }
  return r;
}

std::vector<UtteranceRecord> parse_manifest(std::istream& in, int session_count) {
  std::vector<UtteranceRecord> records;
  std::set<std::string> ids;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line, std::string("malformed record: ") + e.what());
    }
    auto record = record_from_json(doc, line, session_count);
    if (!ids.insert(record.id).second)
      throw ValidationError("line " + std::to_string(line) + ": id",
                            "duplicate id '" + record.id + "'");
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<UtteranceRecord> load_manifest(const std::filesystem::path& path, int session_count) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest '" + path.string() + "'");
  return parse_manifest(in, session_count);
}

std::string serialize_manifest(const std::vector<UtteranceRecord>& records) {
  std::ostringstream out;
  for (const auto& r : records) out << to_json(r).dump() << '\n';
  return out.str();
}

void save_manifest(const std::filesystem::path& path, const std::vector<UtteranceRecord>& records) {
  write_file_atomic(path, serialize_manifest(records));
}

}  // namespace mmclap
