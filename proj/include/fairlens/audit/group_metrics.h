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

#ifndef FAIRLENS_AUDIT_GROUP_METRICS_H_
#define FAIRLENS_AUDIT_GROUP_METRICS_H_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairlens/core/dataset.h"
#include "fairlens/core/metrics.h"
#include "fairlens/core/oracle.h"

namespace fairlens::audit {

struct GroupMetrics {
  std::string group;
  ConfusionCounts counts;  // raw tallies; every rate below derives from them

  uint64_t support() const { return counts.support(); }
  std::optional<double> outcome_rate() const { return counts.outcome_rate(); }
  std::optional<double> tpr() const { return counts.tpr(); }
  std::optional<double> tnr() const { return counts.tnr(); }
  std::optional<double> accuracy() const { return counts.accuracy(); }
  std::optional<double> get(Metric m) const { return counts.get(m); }

  bool operator==(const GroupMetrics&) const = default;
};

// One row per declared category, in category-set order, including categories
// with zero support.
struct GroupMetricsTable {
  std::vector<GroupMetrics> groups;
  ConfusionCounts overall;
  double threshold = 0.5;

  const GroupMetrics& find(const std::string& group) const;
  std::optional<double> value(const std::string& group, Metric metric) const;
  std::vector<std::string> group_names() const;

  bool operator==(const GroupMetricsTable&) const = default;
};

GroupMetricsTable compute_group_metrics(const PredictionOracle& oracle,
                                        const TabularDataset& dataset,
                                        double threshold);

// Same table from precomputed scores (one per dataset row).
GroupMetricsTable group_metrics_from_scores(std::span<const double> scores,
                                            const TabularDataset& dataset,
                                            double threshold);

// Builds a table from raw per-group tallies.
GroupMetricsTable group_metrics_from_counts(
    const std::vector<std::pair<std::string, ConfusionCounts>>& counts,
    double threshold = 0.5);

}  // namespace fairlens::audit

#endif  // FAIRLENS_AUDIT_GROUP_METRICS_H_
