// core/include/mmclap/datapipe/normalize.hpp

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

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmclap/config.hpp"
#include "mmclap/records.hpp"

namespace mmclap::datapipe {

struct NormalizationStats {
  double mean = 0.0;
  double std = 1.0;  // population standard deviation
  NormalizationScope scope = NormalizationScope::Pooled;
};

// (utterance id, annotator id)
using ScoreKey = std::pair<std::string, std::string>;
using NormalizedScores = std::map<ScoreKey, double>;

/// Mean and standard deviation of the task's raw scores, either over all annotators
/// jointly (pooled) or keyed by annotator. Throws DegenerateDistributionError when a
/// distribution has fewer than two distinct values.
std::map<std::string, NormalizationStats> score_statistics(const std::vector<UtteranceRecord>& records,
                                                           const std::string& task, NormalizationScope scope);

/// z = (score - mean) / std under the chosen scope.
NormalizedScores normalize_scores(const std::vector<UtteranceRecord>& records, const std::string& task,
                                  NormalizationScope scope);

/// One score per record: mean (or median) of that record's annotator z-scores.
/// Records without scores for the task are omitted.
std::vector<std::pair<std::string, double>> utterance_scores(const std::vector<UtteranceRecord>& records,
                                                             const NormalizedScores& normalized,
                                                             ScoreAggregation aggregation);

inline constexpr double kModeBinWidth = 1e-6;

struct Binarization {
  std::vector<Label> labels;
  double threshold = 0.0;
  std::size_t modal_count = 0;
  std::vector<std::string> warnings;
};

/// Threshold = mode of the scores after rounding to 1e-6 bins (lowest mode on ties).
/// Below -> 0, above -> 1, in the modal bin -> Abstain.
Binarization binarize_by_mode(std::span<const double> scores);

struct LabelingOptions {
  NormalizationScope scope = NormalizationScope::Pooled;
  ScoreAggregation aggregation = ScoreAggregation::Mean;
};

struct LabelingResult {
  std::vector<LabeledUtterance> items;  // manifest order
  std::map<std::string, double> thresholds;
  std::vector<std::string> warnings;
};

/// Normalizes, aggregates and binarizes every task in `tasks` over the whole manifest.
LabelingResult label_records(const std::vector<UtteranceRecord>& records, const std::vector<std::string>& tasks,
                             const LabelingOptions& options = {});

}  // namespace mmclap::datapipe
