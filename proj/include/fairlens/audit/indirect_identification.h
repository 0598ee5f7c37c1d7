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

#ifndef FAIRLENS_AUDIT_INDIRECT_IDENTIFICATION_H_
#define FAIRLENS_AUDIT_INDIRECT_IDENTIFICATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fairlens/core/dataset.h"
#include "fairlens/core/random_forest.h"

namespace fairlens::audit {

struct IndirectIdentificationReport {
  std::string attribute;
  std::vector<std::string> categories;  // categories with nonzero support
  std::string majority_category;
  double accuracy = 0.0;
  double baseline = 0.0;  // share of the majority category
  double uplift = 0.0;    // accuracy - baseline
  double uplift_threshold = 0.05;
  bool identifiable = false;  // uplift > uplift_threshold
  size_t folds = 0;

  bool operator==(const IndirectIdentificationReport&) const = default;
};

inline constexpr double kDefaultUpliftThreshold = 0.05;

// Can the group attribute be recovered from the model's own input features?
// Trains the audited model family (same forest hyperparameters) to predict
// the attribute, one-vs-rest per category with argmax voting, and measures
// accuracy with k-fold cross-validation stratified by category.
IndirectIdentificationReport indirect_identification_test(
    const TabularDataset& dataset, const ForestParams& params, uint64_t seed,
    size_t k = 5, double uplift_threshold = kDefaultUpliftThreshold);

}  // namespace fairlens::audit

#endif  // FAIRLENS_AUDIT_INDIRECT_IDENTIFICATION_H_
