// core/include/mmclap/eval/table.hpp

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

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmclap/eval/metrics.hpp"
#include "mmclap/eval/sign_test.hpp"

namespace mmclap::eval {

struct TableRow {
  std::string method;  // "random", "supervised", "zero-shot"
  std::string prompt;  // prompt set name, empty when not applicable
  std::vector<std::optional<MetricReport>> cells;  // one per column group
};

/// Rows of WA / UA / per-class recall, grouped by column (e.g. training variants).
struct ResultTable {
  std::string task;
  std::vector<std::string> groups;
  std::vector<std::string> class_names = {"No", "Yes"};
  std::vector<TableRow> rows;
  std::optional<SignTestResult> sign_test;
  std::string sign_test_note;
};

/// Percentage with one decimal, e.g. 0.74 -> "74.0".
std::string format_percent(double fraction);

std::string render_text(const ResultTable& table);
nlohmann::json to_json(const ResultTable& table);

}  // namespace mmclap::eval
