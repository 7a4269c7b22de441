// core/src/eval/table.cpp

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

#include "mmclap/eval/table.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace mmclap::eval {
namespace {

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

std::string lpad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

}  // namespace

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", std::round(fraction * 1000.0) / 10.0);
  return buf;
}

std::string render_text(const ResultTable& table) {
  const std::size_t label_w = 28, cell_w = 7;
  const std::size_t per_group = 2 + table.class_names.size();
  std::ostringstream out;
  if (!table.task.empty()) out << "Task: " << table.task << "\n";
  out << pad("", label_w);
  for (const auto& g : table.groups) out << " | " << pad(g, per_group * cell_w);
  out << "\n" << pad("Method", label_w);
  for (std::size_t g = 0; g < table.groups.size(); ++g) {
    out << " | " << lpad("WA", cell_w) << lpad("UA", cell_w);
    for (const auto& c : table.class_names) out << lpad(c, cell_w);
  }
  out << "\n";
  for (const auto& row : table.rows) {
    out << pad(row.prompt.empty() ? row.method : row.method + " (" + row.prompt + ")", label_w);
    for (std::size_t g = 0; g < table.groups.size(); ++g) {
      out << " | ";
      const auto& cell = g < row.cells.size() ? row.cells[g] : std::nullopt;
      if (!cell) {
        for (std::size_t k = 0; k < per_group; ++k) out << lpad("-", cell_w);
        continue;
      }
      out << lpad(format_percent(cell->wa), cell_w) << lpad(format_percent(cell->ua), cell_w);
      for (std::size_t c = 0; c < table.class_names.size(); ++c) {
        auto it = cell->recall.find(static_cast<int>(c));
        out << lpad(it == cell->recall.end() ? "-" : format_percent(it->second), cell_w);
      }
    }
    out << "\n";
  }
  if (table.sign_test) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", table.sign_test->p_value);
    out << "Sign test";
    if (!table.sign_test_note.empty()) out << " (" << table.sign_test_note << ")";
    out << ": n+=" << table.sign_test->n_plus << " n-=" << table.sign_test->n_minus << " p=" << buf << "\n";
  }
  return out.str();
}

nlohmann::json to_json(const ResultTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : row.cells) {
      if (!cell) {
        cells.push_back(nullptr);
        continue;
      }
      nlohmann::json c = to_json(*cell);
      c["wa_pct"] = format_percent(cell->wa);
      c["ua_pct"] = format_percent(cell->ua);
      cells.push_back(std::move(c));
    }
    rows.push_back({{"method", row.method}, {"prompt", row.prompt}, {"cells", std::move(cells)}});
  }
  nlohmann::json doc = {
      {"task", table.task}, {"groups", table.groups}, {"class_names", table.class_names}, {"rows", std::move(rows)}};
  if (table.sign_test)
    doc["sign_test"] = {{"n_plus", table.sign_test->n_plus},
                        {"n_minus", table.sign_test->n_minus},
                        {"p_value", table.sign_test->p_value},
                        {"note", table.sign_test_note}};
  return doc;
}

}  // namespace mmclap::eval
