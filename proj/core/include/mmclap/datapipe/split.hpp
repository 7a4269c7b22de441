// core/include/mmclap/datapipe/split.hpp

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

#include <vector>

#include "mmclap/error.hpp"

namespace mmclap::datapipe {

template <typename Item>
struct SessionSplit {
  std::vector<Item> train;
  std::vector<Item> test;
};

/// Partitions items by their `session` field; order within each side is preserved.
template <typename Item>
SessionSplit<Item> session_split(const std::vector<Item>& items, int test_session) {
  SessionSplit<Item> out;
  for (const auto& item : items) (item.session == test_session ? out.test : out.train).push_back(item);
  if (out.test.empty())
    throw ValidationError("test_session", "session " + std::to_string(test_session) + " has no items");
  return out;
}

}  // namespace mmclap::datapipe
