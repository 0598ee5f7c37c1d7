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

#ifndef FAIRLENS_MITIGATION_INTERVENTION_H_
#define FAIRLENS_MITIGATION_INTERVENTION_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairlens/audit/group_metrics.h"
#include "fairlens/core/dataset.h"
#include "fairlens/core/metrics.h"
#include "fairlens/core/oracle.h"

namespace fairlens::mitigation {

// 1 - after / before. Undefined when the baseline disparity is zero.
std::optional<double> relative_reduction(double before, double after);

struct GroupShift {
  std::string group;
  double before = 0.0;
  double after = 0.0;
  std::string direction;  // "improved", "worsened" or "unchanged"

  bool operator==(const GroupShift&) const = default;
};

struct InterventionReport {
  std::string name;
  Metric priority_metric = Metric::kTpr;
  std::vector<std::string> groups;
  double baseline_disparity = 0.0;
  double intervention_disparity = 0.0;
  std::optional<double> relative_reduction;
  double baseline_accuracy = 0.0;
  double intervention_accuracy = 0.0;
  double accuracy_delta = 0.0;  // intervention - baseline
  std::vector<GroupShift> shifts;
  // Disparity narrowed but the group that led at baseline got worse, i.e.
  // the gap closed by degrading the better-served group.
  bool narrowed_by_degrading = false;
  std::string verdict;  // "improved" iff disparity strictly reduced
  audit::GroupMetricsTable baseline_metrics;
  audit::GroupMetricsTable intervention_metrics;

  bool operator==(const InterventionReport&) const = default;
};

InterventionReport make_intervention_report(
    const std::string& name, const audit::GroupMetricsTable& baseline,
    const audit::GroupMetricsTable& intervention, Metric priority_metric,
    std::span<const std::string> groups);

struct Candidate {
  std::string name;
  const PredictionOracle* oracle = nullptr;
};

// Scores baseline and candidates on the same evaluation rows (which must be
// disjoint from all training data) and reports one comparison per candidate.
std::vector<InterventionReport> compare_interventions(
    const PredictionOracle& baseline, std::span<const Candidate> candidates,
    const TabularDataset& dataset, Metric priority_metric,
    std::span<const std::string> groups, double threshold);

// Standalone Markdown comparison table.
std::string interventions_to_markdown(
    std::span<const InterventionReport> reports);

}  // namespace fairlens::mitigation

#endif  // FAIRLENS_MITIGATION_INTERVENTION_H_
