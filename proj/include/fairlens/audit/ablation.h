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

#ifndef FAIRLENS_AUDIT_ABLATION_H_
#define FAIRLENS_AUDIT_ABLATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairlens/audit/group_metrics.h"
#include "fairlens/core/cross_validation.h"
#include "fairlens/core/dataset.h"
#include "fairlens/core/random_forest.h"

namespace fairlens::audit {

// Change caused by dropping the feature: without - with. Undefined when the
// metric is undefined on either side.
struct GroupDelta {
  std::string group;
  std::optional<double> tpr;
  std::optional<double> tnr;
  std::optional<double> accuracy;

  bool operator==(const GroupDelta&) const = default;
};

struct AblationResult {
  std::string feature;
  size_t folds = 0;
  GroupMetricsTable with_feature;
  GroupMetricsTable without_feature;
  std::vector<GroupDelta> deltas;
  std::vector<FoldMetrics> folds_with;
  std::vector<FoldMetrics> folds_without;

  bool operator==(const AblationResult&) const = default;
};

// Cross-validates the model with and without `feature` on identical folds and
// seeds, and compares per-group metrics of the out-of-fold predictions.
AblationResult feature_ablation_delta(const TabularDataset& dataset,
                                      const std::string& feature,
                                      const ForestParams& params,
                                      uint64_t seed, size_t k,
                                      double threshold = 0.5);

}  // namespace fairlens::audit

#endif  // FAIRLENS_AUDIT_ABLATION_H_
