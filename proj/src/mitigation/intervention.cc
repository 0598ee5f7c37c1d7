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

#include "fairlens/mitigation/intervention.h"

#include "fairlens/audit/bias_evaluation.h"
#include "fairlens/core/error.h"
#include "fairlens/core/io.h"

namespace fairlens::mitigation {

std::optional<double> relative_reduction(double before, double after) {
  if (before == 0.0) return std::nullopt;
  return 1.0 - after / before;
}

InterventionReport make_intervention_report(
    const std::string& name, const audit::GroupMetricsTable& baseline,
    const audit::GroupMetricsTable& intervention, Metric priority_metric,
    std::span<const std::string> groups) {
  InterventionReport r;
  r.name = name;
  r.priority_metric = priority_metric;
  r.groups.assign(groups.begin(), groups.end());

  std::string leader;
  double leader_value = -1.0;
  for (const auto& g : groups) {
    const auto before = baseline.value(g, priority_metric);
    const auto after = intervention.value(g, priority_metric);
    if (!before || !after) {
      throw Error(std::string(metric_name(priority_metric)) +
                  " is undefined for group '" + g + "'");
    }
    const std::string direction =
        *after > *before ? "improved"
                         : (*after < *before ? "worsened" : "unchanged");
    r.shifts.push_back({g, *before, *after, direction});
    if (*before > leader_value) {
      leader_value = *before;
      leader = g;
    }
  }
  r.baseline_disparity =
      audit::compute_disparity(baseline, priority_metric, groups);
  r.intervention_disparity =
      audit::compute_disparity(intervention, priority_metric, groups);
  r.relative_reduction =
      relative_reduction(r.baseline_disparity, r.intervention_disparity);
  r.baseline_accuracy = baseline.overall.accuracy().value_or(0.0);
  r.intervention_accuracy = intervention.overall.accuracy().value_or(0.0);
  r.accuracy_delta = r.intervention_accuracy - r.baseline_accuracy;
  const bool narrowed = r.intervention_disparity < r.baseline_disparity;
  r.verdict = narrowed ? "improved" : "not-improved";
  for (const auto& s : r.shifts) {
    if (s.group == leader && s.direction == "worsened" && narrowed) {
      r.narrowed_by_degrading = true;
    }
  }
  r.baseline_metrics = baseline;
  r.intervention_metrics = intervention;
  return r;
}

std::vector<InterventionReport> compare_interventions(
    const PredictionOracle& baseline, std::span<const Candidate> candidates,
    const TabularDataset& dataset, Metric priority_metric,
    std::span<const std::string> groups, double threshold) {
  const audit::GroupMetricsTable before =
      audit::compute_group_metrics(baseline, dataset, threshold);
  std::vector<InterventionReport> out;
  for (const auto& c : candidates) {
    if (c.oracle == nullptr) throw Error("candidate '" + c.name + "' is null");
    const audit::GroupMetricsTable after =
        audit::compute_group_metrics(*c.oracle, dataset, threshold);
    out.push_back(
        make_intervention_report(c.name, before, after, priority_metric, groups));
  }
  return out;
}

namespace {

std::string pct(double v) { return format_percent(v, 1); }

}  // namespace

std::string interventions_to_markdown(
    std::span<const InterventionReport> reports) {
  std::string out =
      "| Intervention | Metric | Disparity before | Disparity after | "
      "Reduction | Accuracy before | Accuracy after | Verdict |\n"
      "|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : reports) {
    out += "| " + r.name + " | " + std::string(metric_name(r.priority_metric)) +
           " | " + pct(r.baseline_disparity) + " | " +
           pct(r.intervention_disparity) + " | " +
           (r.relative_reduction ? pct(*r.relative_reduction) : "n/a") +
           " | " + pct(r.baseline_accuracy) + " | " +
           pct(r.intervention_accuracy) + " | " + r.verdict +
           (r.narrowed_by_degrading ? " (gap closed by degrading the leading group)"
                                    : "") +
           " |\n";
  }
  return out;
}

}  // namespace fairlens::mitigation
