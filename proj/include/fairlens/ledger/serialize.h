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

#ifndef FAIRLENS_LEDGER_SERIALIZE_H_
#define FAIRLENS_LEDGER_SERIALIZE_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairlens/audit/ablation.h"
#include "fairlens/audit/bias_evaluation.h"
#include "fairlens/audit/chi_squared.h"
#include "fairlens/audit/group_metrics.h"
#include "fairlens/audit/indirect_identification.h"
#include "fairlens/core/json_util.h"
#include "fairlens/curves/risk_curve.h"
#include "fairlens/ledger/shape.h"
#include "fairlens/mitigation/intervention.h"

// Ledger representations of audit results. Undefined metrics become null.
namespace fairlens::ledger {

Json optional_number(const std::optional<double>& v);

Json counts_row_to_json(const std::string& group, const ConfusionCounts& c);
Json group_metrics_to_json(const audit::GroupMetricsTable& table);
Json finding_to_json(const audit::AuditFinding& finding);
// fold_values: the per-fold metric values a derived threshold came from.
Json tolerance_to_json(const audit::ToleranceThreshold& threshold,
                       std::span<const std::optional<double>> fold_values);
Json indirect_identification_to_json(
    const audit::IndirectIdentificationReport& report);
Json chi_squared_to_json(const std::string& name,
                         std::span<const std::string> groups,
                         std::span<const double> observed,
                         std::span<const double> benchmark,
                         const audit::ChiSquaredResult& result);
Json ablation_to_json(const audit::AblationResult& result);
Json intervention_to_json(const mitigation::InterventionReport& report);
Json curve_points_to_json(std::span<const curves::CurvePoint> points);

std::shared_ptr<Shape> counts_row_shape();
std::shared_ptr<Shape> group_metrics_shape();
std::shared_ptr<Shape> finding_shape();
std::shared_ptr<Shape> tolerance_shape();
std::shared_ptr<Shape> indirect_identification_shape();
std::shared_ptr<Shape> chi_squared_shape();
std::shared_ptr<Shape> ablation_shape();
std::shared_ptr<Shape> intervention_shape();
std::shared_ptr<Shape> curve_point_shape();

}  // namespace fairlens::ledger

#endif  // FAIRLENS_LEDGER_SERIALIZE_H_
