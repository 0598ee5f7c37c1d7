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

#include "fairlens/audit/bias_evaluation.h"

#include <algorithm>
#include <cmath>

#include "fairlens/core/error.h"

namespace fairlens::audit {

std::string_view provenance_name(ThresholdProvenance p) {
  return p == ThresholdProvenance::kConfigured ? "configured"
                                               : "derived-from-cv";
}

ThresholdProvenance parse_provenance(std::string_view name) {
  if (name == "configured") return ThresholdProvenance::kConfigured;
  if (name == "derived-from-cv") return ThresholdProvenance::kDerivedFromCv;
  throw Error("unknown threshold provenance '" + std::string(name) + "'");
}

ToleranceThreshold configured_tolerance(Metric metric, double half_width) {
  if (!(half_width > 0.0)) throw Error("tolerance half-width must be positive");
  return {metric, half_width, ThresholdProvenance::kConfigured};
}

ToleranceThreshold derive_tolerance_from_cv(std::span<const FoldMetrics> folds,
                                            Metric metric) {
  std::vector<double> values;
  for (const auto& f : folds) {
    std::optional<double> v;
    switch (metric) {
      case Metric::kTpr:
        v = f.tpr;
        break;
      case Metric::kTnr:
        v = f.tnr;
        break;
      case Metric::kAccuracy:
        v = f.accuracy;
        break;
    }
    if (v) values.push_back(*v);
  }
  if (values.empty()) {
    throw Error(std::string(metric_name(metric)) + " is undefined in every fold");
  }
  if (values.size() < 2) {
    throw Error("deriving a tolerance needs at least two folds with " +
                std::string(metric_name(metric)) + " defined");
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double half_width = (*hi - *lo) / 2.0;
  // Policy value, not a measurement: strip float noise such as
  // (0.68 - 0.64) / 2 = 0.020000000000000018.
  half_width = std::round(half_width * 1e10) / 1e10;
  half_width = std::max(half_width, kMinimumDerivedHalfWidth);
  return {metric, half_width, ThresholdProvenance::kDerivedFromCv};
}

double compute_disparity(const GroupMetricsTable& metrics, Metric metric,
                         std::span<const std::string> groups) {
  std::vector<double> defined;
  for (const auto& g : groups) {
    if (auto v = metrics.value(g, metric)) defined.push_back(*v);
  }
  if (defined.size() < 2) {
    throw Error("disparity in " + std::string(metric_name(metric)) +
                " needs at least two selected groups with the metric defined");
  }
  const auto [lo, hi] = std::minmax_element(defined.begin(), defined.end());
  return *hi - *lo;
}

std::vector<AuditFinding> evaluate_bias(
    const GroupMetricsTable& metrics,
    std::span<const ToleranceThreshold> thresholds,
    std::span<const std::string> groups) {
  std::vector<AuditFinding> findings;
  for (const auto& t : thresholds) {
    if (!(t.half_width > 0.0)) {
      throw Error("tolerance half-width must be positive");
    }
    for (size_t a = 0; a < groups.size(); ++a) {
      for (size_t b = a + 1; b < groups.size(); ++b) {
        const auto va = metrics.value(groups[a], t.metric);
        const auto vb = metrics.value(groups[b], t.metric);
        if (!va || !vb) continue;
        AuditFinding f;
        f.metric = t.metric;
        f.group_a = groups[a];
        f.group_b = groups[b];
        f.value_a = *va;
        f.value_b = *vb;
        f.disparity = std::fabs(*va - *vb);
        f.threshold = t;
        f.exceeded = f.disparity > t.half_width;
        f.favoured = *va > *vb ? groups[a] : (*vb > *va ? groups[b] : "none");
        findings.push_back(std::move(f));
      }
    }
  }
  return findings;
}

bool any_exceeded(std::span<const AuditFinding> findings) {
  return std::any_of(findings.begin(), findings.end(),
                     [](const AuditFinding& f) { return f.exceeded; });
}

}  // namespace fairlens::audit
