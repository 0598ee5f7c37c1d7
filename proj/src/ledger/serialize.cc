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

#include "fairlens/ledger/serialize.h"

#include "fairlens/core/io.h"

namespace fairlens::ledger {
namespace {

using S = Shape;

std::shared_ptr<Shape> metric_name_shape() {
  return S::one_of({"TPR", "TNR", "accuracy"});
}

}  // namespace

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json counts_row_to_json(const std::string& group, const ConfusionCounts& c) {
  return Json{{"group", group},
              {"tp", c.tp},
              {"fp", c.fp},
              {"tn", c.tn},
              {"fn", c.fn},
              {"support", c.support()},
              {"tpr", optional_number(c.tpr())},
              {"tnr", optional_number(c.tnr())},
              {"accuracy", optional_number(c.accuracy())},
              {"outcome_rate", optional_number(c.outcome_rate())}};
}

std::shared_ptr<Shape> counts_row_shape() {
  auto s = S::object();
  s->required("group", S::string())
      .required("tp", S::integer())
      .required("fp", S::integer())
      .required("tn", S::integer())
      .required("fn", S::integer())
      .required("support", S::integer())
      .nullable("tpr", S::number())
      .nullable("tnr", S::number())
      .nullable("accuracy", S::number())
      .nullable("outcome_rate", S::number());
  return s;
}

Json group_metrics_to_json(const audit::GroupMetricsTable& table) {
  Json groups = Json::array();
  for (const auto& g : table.groups) {
    groups.push_back(counts_row_to_json(g.group, g.counts));
  }
  return Json{{"threshold", table.threshold},
              {"overall", counts_row_to_json("overall", table.overall)},
              {"groups", std::move(groups)}};
}

std::shared_ptr<Shape> group_metrics_shape() {
  auto s = S::object();
  s->required("threshold", S::number())
      .required("overall", counts_row_shape())
      .required("groups", S::array(counts_row_shape()));
  return s;
}

Json finding_to_json(const audit::AuditFinding& f) {
  return Json{{"metric", metric_name(f.metric)},
              {"group_a", f.group_a},
              {"group_b", f.group_b},
              {"value_a", f.value_a},
              {"value_b", f.value_b},
              {"disparity", f.disparity},
              {"half_width", f.threshold.half_width},
              {"threshold_provenance", provenance_name(f.threshold.provenance)},
              {"exceeded", f.exceeded},
              {"favoured", f.favoured}};
}

std::shared_ptr<Shape> finding_shape() {
  auto s = S::object();
  s->required("metric", metric_name_shape())
      .required("group_a", S::string())
      .required("group_b", S::string())
      .required("value_a", S::number())
      .required("value_b", S::number())
      .required("disparity", S::number())
      .required("half_width", S::number())
      .required("threshold_provenance", S::one_of({"configured", "derived-from-cv"}))
      .required("exceeded", S::boolean())
      .required("favoured", S::string());
  return s;
}

Json tolerance_to_json(const audit::ToleranceThreshold& t,
                       std::span<const std::optional<double>> fold_values) {
  Json folds = Json::array();
  for (const auto& v : fold_values) folds.push_back(optional_number(v));
  return Json{{"metric", metric_name(t.metric)},
              {"half_width", t.half_width},
              {"provenance", provenance_name(t.provenance)},
              {"fold_values", std::move(folds)}};
}

std::shared_ptr<Shape> tolerance_shape() {
  auto s = S::object();
  s->required("metric", metric_name_shape())
      .required("half_width", S::number())
      .required("provenance", S::one_of({"configured", "derived-from-cv"}))
      .required("fold_values", S::array(S::or_null(S::number())));
  return s;
}

Json indirect_identification_to_json(
    const audit::IndirectIdentificationReport& r) {
  return Json{{"attribute", r.attribute},
              {"categories", r.categories},
              {"majority_category", r.majority_category},
              {"accuracy", r.accuracy},
              {"baseline", r.baseline},
              {"uplift", r.uplift},
              {"uplift_threshold", r.uplift_threshold},
              {"identifiable", r.identifiable},
              {"folds", r.folds}};
}

std::shared_ptr<Shape> indirect_identification_shape() {
  auto s = S::object();
  s->required("attribute", S::string())
      .required("categories", S::array(S::string()))
      .required("majority_category", S::string())
      .required("accuracy", S::number())
      .required("baseline", S::number())
      .required("uplift", S::number())
      .required("uplift_threshold", S::number())
      .required("identifiable", S::boolean())
      .required("folds", S::integer());
  return s;
}

Json chi_squared_to_json(const std::string& name,
                         std::span<const std::string> groups,
                         std::span<const double> observed,
                         std::span<const double> benchmark,
                         const audit::ChiSquaredResult& result) {
  return Json{
      {"name", name},
      {"groups", std::vector<std::string>(groups.begin(), groups.end())},
      {"observed", std::vector<double>(observed.begin(), observed.end())},
      {"benchmark", std::vector<double>(benchmark.begin(), benchmark.end())},
      {"expected", result.expected},
      {"statistic", result.statistic},
      // p-values are reported to 6 significant figures
      {"p_value", round_significant(result.p_value, 6)},
      {"degrees_of_freedom", result.degrees_of_freedom}};
}

std::shared_ptr<Shape> chi_squared_shape() {
  auto s = S::object();
  s->required("name", S::string())
      .required("groups", S::array(S::string()))
      .required("observed", S::array(S::number()))
      .required("benchmark", S::array(S::number()))
      .required("expected", S::array(S::number()))
      .required("statistic", S::number())
      .required("p_value", S::number())
      .required("degrees_of_freedom", S::integer());
  return s;
}

Json ablation_to_json(const audit::AblationResult& r) {
  Json deltas = Json::array();
  for (const auto& d : r.deltas) {
    deltas.push_back(Json{{"group", d.group},
                          {"tpr", optional_number(d.tpr)},
                          {"tnr", optional_number(d.tnr)},
                          {"accuracy", optional_number(d.accuracy)}});
  }
  return Json{{"feature", r.feature},
              {"folds", r.folds},
              {"with_feature", group_metrics_to_json(r.with_feature)},
              {"without_feature", group_metrics_to_json(r.without_feature)},
              {"deltas", std::move(deltas)}};
}

std::shared_ptr<Shape> ablation_shape() {
  auto delta = S::object();
  delta->required("group", S::string())
      .nullable("tpr", S::number())
      .nullable("tnr", S::number())
      .nullable("accuracy", S::number());
  auto s = S::object();
  s->required("feature", S::string())
      .required("folds", S::integer())
      .required("with_feature", group_metrics_shape())
      .required("without_feature", group_metrics_shape())
      .required("deltas", S::array(delta));
  return s;
}

Json intervention_to_json(const mitigation::InterventionReport& r) {
  Json shifts = Json::array();
  for (const auto& s : r.shifts) {
    shifts.push_back(Json{{"group", s.group},
                          {"before", s.before},
                          {"after", s.after},
                          {"direction", s.direction}});
  }
  return Json{{"name", r.name},
              {"priority_metric", metric_name(r.priority_metric)},
              {"groups", r.groups},
              {"baseline_disparity", r.baseline_disparity},
              {"intervention_disparity", r.intervention_disparity},
              {"relative_reduction", optional_number(r.relative_reduction)},
              {"baseline_accuracy", r.baseline_accuracy},
              {"intervention_accuracy", r.intervention_accuracy},
              {"accuracy_delta", r.accuracy_delta},
              {"shifts", std::move(shifts)},
              {"narrowed_by_degrading", r.narrowed_by_degrading},
              {"verdict", r.verdict},
              {"baseline_metrics", group_metrics_to_json(r.baseline_metrics)},
              {"intervention_metrics",
               group_metrics_to_json(r.intervention_metrics)}};
}

std::shared_ptr<Shape> intervention_shape() {
  auto shift = S::object();
  shift->required("group", S::string())
      .required("before", S::number())
      .required("after", S::number())
      .required("direction", S::one_of({"improved", "worsened", "unchanged"}));
  auto s = S::object();
  s->required("name", S::string())
      .required("priority_metric", metric_name_shape())
      .required("groups", S::array(S::string()))
      .required("baseline_disparity", S::number())
      .required("intervention_disparity", S::number())
      .nullable("relative_reduction", S::number())
      .required("baseline_accuracy", S::number())
      .required("intervention_accuracy", S::number())
      .required("accuracy_delta", S::number())
      .required("shifts", S::array(shift))
      .required("narrowed_by_degrading", S::boolean())
      .required("verdict", S::one_of({"improved", "not-improved"}))
      .required("baseline_metrics", group_metrics_shape())
      .required("intervention_metrics", group_metrics_shape());
  return s;
}

Json curve_points_to_json(std::span<const curves::CurvePoint> points) {
  Json out = Json::array();
  for (const auto& p : points) {
    out.push_back(Json{{"percentile", p.percentile},
                       {"feature_value", p.feature_value},
                       {"mean_risk", p.mean_risk},
                       {"std", p.std_dev},
                       {"p10", p.p10},
                       {"p90", p.p90}});
  }
  return out;
}

std::shared_ptr<Shape> curve_point_shape() {
  auto s = S::object();
  s->required("percentile", S::integer())
      .required("feature_value", S::number())
      .required("mean_risk", S::number())
      .required("std", S::number())
      .required("p10", S::number())
      .required("p90", S::number());
  return s;
}

}  // namespace fairlens::ledger
