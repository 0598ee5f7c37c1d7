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

#ifndef FAIRLENS_AUDIT_BIAS_EVALUATION_H_
#define FAIRLENS_AUDIT_BIAS_EVALUATION_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairlens/audit/group_metrics.h"
#include "fairlens/core/cross_validation.h"
#include "fairlens/core/metrics.h"

namespace fairlens::audit {

enum class ThresholdProvenance { kConfigured, kDerivedFromCv };

std::string_view provenance_name(ThresholdProvenance p);
ThresholdProvenance parse_provenance(std::string_view name);

// Allowed band: a pairwise disparity up to and including half_width passes.
struct ToleranceThreshold {
  Metric metric = Metric::kTpr;
  double half_width = 0.02;
  ThresholdProvenance provenance = ThresholdProvenance::kConfigured;

  bool operator==(const ToleranceThreshold&) const = default;
};

ToleranceThreshold configured_tolerance(Metric metric, double half_width);

inline constexpr double kMinimumDerivedHalfWidth = 0.005;

// Half the max-min spread of the metric across folds, floored at
// kMinimumDerivedHalfWidth and rounded to 10 decimals. Folds where the metric
// is undefined are skipped; at least two defined folds are required.
ToleranceThreshold derive_tolerance_from_cv(std::span<const FoldMetrics> folds,
                                            Metric metric);

// Max pairwise absolute difference of `metric` over the selected groups that
// have it defined. Needs at least two such groups.
double compute_disparity(const GroupMetricsTable& metrics, Metric metric,
                         std::span<const std::string> groups);

struct AuditFinding {
  Metric metric = Metric::kTpr;
  std::string group_a;
  std::string group_b;
  double value_a = 0.0;
  double value_b = 0.0;
  double disparity = 0.0;
  ToleranceThreshold threshold;
  bool exceeded = false;
  std::string favoured;  // group with the higher value, or "none" on a tie

  bool operator==(const AuditFinding&) const = default;
};

// One finding per (threshold metric, selected group pair), in the order the
// groups are given.
// Pairs where either group has the metric undefined are skipped.
std::vector<AuditFinding> evaluate_bias(
    const GroupMetricsTable& metrics,
    std::span<const ToleranceThreshold> thresholds,
    std::span<const std::string> groups);

bool any_exceeded(std::span<const AuditFinding> findings);

}  // namespace fairlens::audit

#endif  // FAIRLENS_AUDIT_BIAS_EVALUATION_H_
