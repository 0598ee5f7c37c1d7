/*
 * Copyright 2026 The Fairlens Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FAIRLENS_CORE_CROSS_VALIDATION_H_
#define FAIRLENS_CORE_CROSS_VALIDATION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fairlens/core/dataset.h"
#include "fairlens/core/metrics.h"
#include "fairlens/core/random_forest.h"

namespace fairlens {

using Folds = std::vector<std::vector<size_t>>;

struct FoldMetrics {
  size_t fold = 0;
  ConfusionCounts counts;
  std::optional<double> tpr;  // undefined when the fold has no positives
  std::optional<double> tnr;
  double accuracy = 0.0;
  std::vector<size_t> held_out;
};

// Label-stratified folds. Positives and negatives are shuffled separately,
// concatenated and dealt round-robin, so fold sizes differ by at most one and
// each fold's positive count is within one row of size * global rate.
Folds stratified_folds(std::span<const uint8_t> labels, size_t k,
                       uint64_t seed);

// Same dealing scheme for a multi-class target: classes are shuffled
// separately and dealt in ascending code order.
Folds stratified_folds_by_class(std::span<const uint32_t> classes, size_t k,
                                uint64_t seed);

struct TrainTestSplit {
  std::vector<size_t> train;
  std::vector<size_t> test;
};

// Holds out round(test_fraction * count) rows of each label class.
TrainTestSplit stratified_split(std::span<const uint8_t> labels,
                                double test_fraction, uint64_t seed);

// Scores every row with the forest trained on the other folds.
std::vector<double> out_of_fold_scores(const TabularDataset& dataset,
                                       const Folds& folds,
                                       const ForestParams& params,
                                       uint64_t seed);

std::vector<FoldMetrics> fold_metrics(std::span<const double> scores,
                                      std::span<const uint8_t> labels,
                                      const Folds& folds, double threshold);

std::vector<FoldMetrics> k_fold_cross_validate(const TabularDataset& dataset,
                                               size_t k,
                                               const ForestParams& params,
                                               uint64_t seed,
                                               double threshold = 0.5);

}  // namespace fairlens

#endif  // FAIRLENS_CORE_CROSS_VALIDATION_H_
