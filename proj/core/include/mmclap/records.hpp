// core/include/mmclap/records.hpp

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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mmclap {

enum class Label : std::int8_t { Negative = 0, Positive = 1, Abstain = -1 };

inline bool is_usable(Label label) noexcept { return label != Label::Abstain; }
inline int polarity(Label label) noexcept { return label == Label::Positive ? 1 : 0; }
std::string to_string(Label label);

/// Either a path (relative paths resolve against the manifest directory) or inline 16 kHz samples.
struct AudioRef {
  std::string path;
  std::vector<float> samples;

  bool is_inline() const noexcept { return path.empty(); }
  bool operator==(const AudioRef&) const = default;
};

// task name -> annotator id -> score on the 1..7 scale
using RawScores = std::map<std::string, std::map<std::string, int>>;

struct UtteranceRecord {
  std::string id;
  AudioRef audio_ref;
  std::string speaker;
  int session = 1;
  RawScores raw_scores;

  bool operator==(const UtteranceRecord&) const = default;
};

struct LabeledUtterance {
  std::string id;
  AudioRef audio_ref;
  int session = 1;
  std::map<std::string, Label> labels;

  /// Missing tasks read as Abstain.
  Label label(const std::string& task) const;
};

inline constexpr int kMinScore = 1;
inline constexpr int kMaxScore = 7;
inline constexpr int kDefaultSessionCount = 6;

nlohmann::json to_json(const UtteranceRecord& record);

/// Parses one manifest object; `line` only feeds error messages.
UtteranceRecord record_from_json(const nlohmann::json& doc, std::size_t line, int session_count);

std::vector<UtteranceRecord> parse_manifest(std::istream& in,
                                            int session_count = kDefaultSessionCount);
std::vector<UtteranceRecord> load_manifest(const std::filesystem::path& path,
                                           int session_count = kDefaultSessionCount);

std::string serialize_manifest(const std::vector<UtteranceRecord>& records);
void save_manifest(const std::filesystem::path& path, const std::vector<UtteranceRecord>& records);

}  // namespace mmclap
