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

#include "fairlens/cli/pipeline.h"

#include <algorithm>
#include <optional>

#include "fairlens/audit/ablation.h"
#include "fairlens/audit/bias_evaluation.h"
#include "fairlens/audit/chi_squared.h"
#include "fairlens/audit/group_metrics.h"
#include "fairlens/audit/indirect_identification.h"
#include "fairlens/core/csv.h"
#include "fairlens/core/error.h"
#include "fairlens/core/io.h"
#include "fairlens/core/model_io.h"
#include "fairlens/core/rng.h"
#include "fairlens/ledger/guidelines.h"
#include "fairlens/ledger/serialize.h"
#include "fairlens/mitigation/attribute_model.h"
#include "fairlens/mitigation/blind_separate.h"
#include "fairlens/mitigation/intervention.h"

namespace fairlens::cli {
namespace {

namespace fs = std::filesystem;
using ledger::AuditConfig;

std::string metric_definition(Metric m) {
  switch (m) {
    case Metric::kTpr:
      return "TP / (TP + FN): share of at-risk players the model flags";
    case Metric::kTnr:
      return "TN / (TN + FP): share of players not at risk the model leaves "
             "unflagged";
    case Metric::kAccuracy:
      return "(TP + TN) / N";
  }
  return "";
}

std::optional<double> fold_value(const FoldMetrics& f, Metric m) {
  switch (m) {
    case Metric::kTpr:
      return f.tpr;
    case Metric::kTnr:
      return f.tnr;
    case Metric::kAccuracy:
      return f.accuracy;
  }
  return std::nullopt;
}

Json index_array(const std::vector<size_t>& v) {
  Json out = Json::array();
  for (const size_t i : v) out.push_back(i);
  return out;
}

std::vector<size_t> indices_from_json(const Json& v, const std::string& pointer,
                                      size_t rows) {
  const Json& arr = json_array(v, pointer);
  std::vector<size_t> out;
  out.reserve(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number_unsigned() ||
        arr[i].get<uint64_t>() >= static_cast<uint64_t>(rows)) {
      throw JsonSchemaError(json_pointer_append(pointer, std::to_string(i)),
                            "expected a row index below " + std::to_string(rows));
    }
    out.push_back(arr[i].get<size_t>());
  }
  return out;
}

}  // namespace

std::string model_text(const Json& doc) { return doc.dump(2) + "\n"; }

SynthArtifacts run_synth(const AuditConfig& config, uint64_t seed) {
  if (!config.data.synth) {
    throw Error("config declares a CSV data source; nothing to synthesise");
  }
  synth::SynthConfig cfg = *config.data.synth;
  cfg.seed = derive_seed(seed, "synth");
  const synth::SynthResult result = synth::generate(cfg);
  return SynthArtifacts{dataset_to_csv(result.dataset, cfg.schema()),
                        synth::ground_truth_to_csv(result, cfg)};
}

LoadedDataset dataset_from_text(const AuditConfig& config,
                                const std::string& text, std::string path) {
  std::string source = "csv";
  if (config.data.synth) {
    source = "synthetic:" +
             (config.data.synth_preset.empty() ? std::string("custom")
                                               : config.data.synth_preset);
  }
  return LoadedDataset{parse_dataset_csv(text, config.data.schema),
                       ledger::sha256_hex(text), std::move(path), source};
}

LoadedDataset load_dataset(const AuditConfig& config, const fs::path& out_dir) {
  fs::path path;
  std::string recorded;
  if (config.data.synth) {
    path = out_dir / kDatasetFile;
    recorded = kDatasetFile;
    if (!fs::exists(path)) {
      throw Error("dataset not found at " + path.string() +
                  "; run the synth command first");
    }
  } else {
    path = config.data.csv;
    recorded = config.document.at("data").at("csv").get<std::string>();
  }
  const std::string text = read_file(path);
  try {
    return dataset_from_text(config, text, recorded);
  } catch (const Error& e) {
    throw Error(path.string() + ":" + e.what());
  }
}

TrainedModel train_model(const AuditConfig& config, uint64_t seed,
                         const LoadedDataset& data) {
  const TabularDataset& ds = data.dataset;
  TrainTestSplit split = stratified_split(ds.labels(), config.test_fraction,
                                          derive_seed(seed, "train-test-split"));
  RandomForest forest = train_random_forest(ds.subset(split.train), config.model,
                                            derive_seed(seed, "model"));
  forest.set_threshold(config.audit.decision_threshold);
  Json doc{{"format", kModelFormat},
           {"seed", seed},
           {"dataset_sha256", data.sha256},
           {"split",
            {{"test_fraction", config.test_fraction},
             {"train", index_array(split.train)},
             {"test", index_array(split.test)}}},
           {"model", forest_to_json(forest)}};
  return TrainedModel{std::move(forest), std::move(split), data.sha256,
                      std::move(doc)};
}

TrainedModel model_from_json(const Json& document, const LoadedDataset& data) {
  StrictObject obj(document, "");
  if (obj.string("format") != kModelFormat) {
    throw JsonSchemaError("/format", "unsupported model format");
  }
  obj.unsigned_integer("seed");
  const std::string hash = obj.string("dataset_sha256");
  if (hash != data.sha256) {
    throw Error("model was trained on a different dataset (sha256 " +
                hash.substr(0, 12) + ", current " + data.sha256.substr(0, 12) +
                "); rerun the train command");
  }
  StrictObject split(obj.at("split"), "/split");
  split.number("test_fraction");
  TrainTestSplit s;
  const size_t rows = data.dataset.rows();
  s.train = indices_from_json(split.at("train"), "/split/train", rows);
  s.test = indices_from_json(split.at("test"), "/split/test", rows);
  split.finish();
  RandomForest forest = forest_from_json(obj.at("model"), "/model");
  obj.finish();
  return TrainedModel{std::move(forest), std::move(s), hash, document};
}

AuditSections run_audit(const AuditConfig& config, uint64_t seed,
                        const LoadedDataset& data, const TrainedModel& model,
                        const std::string& model_sha256) {
  const auto& a = config.audit;
  const TabularDataset& ds = data.dataset;
  const TabularDataset train = ds.subset(model.split.train);
  const TabularDataset test = ds.subset(model.split.test);
  AuditSections out;

  out.provenance = Json{
      {"config", config.document},
      {"config_sha256", ledger::sha256_hex(ledger::canonical_compact(config.document))},
      {"dataset",
       {{"path", data.path},
        {"sha256", data.sha256},
        {"rows", ds.rows()},
        {"source", data.source}}},
      {"model", {{"path", kModelFile}, {"sha256", model_sha256}, {"kind", model.forest.info().kind}}},
      {"evaluation",
       {{"split", "test"},
        {"rows", test.rows()},
        {"disjoint_from_training", true},
        {"note", "Findings and intervention comparisons use the held-out test "
                 "split (" + std::to_string(test.rows()) + " of " +
                 std::to_string(ds.rows()) +
                 " rows); its row indices are disjoint from the training "
                 "rows by construction."}}}};

  out.guideline_tags = Json::array();
  for (const auto& id : config.guidelines) {
    const auto& g = ledger::find_guideline(id);
    out.guideline_tags.push_back(
        Json{{"id", g.id}, {"text", g.text}, {"principle", g.principle}});
  }

  out.step1 = Json{{"model", config.scope.model},
                   {"justification", config.scope.justification},
                   {"excluded", config.scope.excluded}};
  out.step2 = Json::array();
  for (const auto& c : config.categories) {
    out.step2.push_back(
        Json{{"name", c.name}, {"status", c.status}, {"rationale", c.rationale}});
  }

  // Step 3: metric definitions and tolerance bands.
  std::vector<audit::ToleranceThreshold> thresholds;
  Json metric_defs = Json::array();
  Json threshold_json = Json::array();
  std::vector<FoldMetrics> cv;
  const bool derived = a.tolerance_source == audit::ThresholdProvenance::kDerivedFromCv;
  if (derived) {
    cv = k_fold_cross_validate(train, a.cv_folds, config.model,
                               derive_seed(seed, "tolerance-cv"),
                               a.decision_threshold);
  }
  for (const Metric m : a.metrics) {
    metric_defs.push_back(Json{{"name", metric_name(m)}, {"definition", metric_definition(m)}});
    std::vector<std::optional<double>> values;
    audit::ToleranceThreshold t = audit::configured_tolerance(m, a.half_width);
    if (derived) {
      t = audit::derive_tolerance_from_cv(cv, m);
      for (const auto& f : cv) values.push_back(fold_value(f, m));
    }
    thresholds.push_back(t);
    threshold_json.push_back(ledger::tolerance_to_json(t, values));
  }
  out.step3 = Json{{"metrics", std::move(metric_defs)},
                   {"decision_threshold", a.decision_threshold},
                   {"compare_groups", a.compare_groups},
                   {"cv_folds", derived ? Json(a.cv_folds) : Json(nullptr)},
                   {"thresholds", std::move(threshold_json)}};

  // Step 4: per-group metrics on held-out rows and the supporting analyses.
  const audit::GroupMetricsTable table =
      audit::compute_group_metrics(model.forest, test, a.decision_threshold);
  const auto findings = audit::evaluate_bias(table, thresholds, a.compare_groups);
  out.any_exceeded = audit::any_exceeded(findings);
  Json findings_json = Json::array();
  for (const auto& f : findings) findings_json.push_back(ledger::finding_to_json(f));

  Json indirect = nullptr;
  if (a.indirect_identification) {
    indirect = ledger::indirect_identification_to_json(
        audit::indirect_identification_test(train, config.model,
                                            derive_seed(seed, "indirect-identification"),
                                            a.indirect_folds, a.uplift_threshold));
  }

  Json chi = Json::array();
  if (a.benchmark) {
    const GroupColumn& groups = ds.groups();
    std::vector<double> observed;
    for (const auto& name : a.benchmark->groups) {
      const GroupCode code = groups.categories.code(name);
      observed.push_back(static_cast<double>(
          std::count(groups.codes.begin(), groups.codes.end(), code)));
    }
    const auto benchmark = audit::normalize_proportions(a.benchmark->proportions);
    const auto result = audit::chi_squared_group_benchmark(observed, benchmark);
    chi.push_back(ledger::chi_squared_to_json(a.benchmark->name, a.benchmark->groups,
                                              observed, benchmark, result));
  }

  Json ablations = Json::array();
  for (const auto& feature : a.ablation_features) {
    ablations.push_back(ledger::ablation_to_json(audit::feature_ablation_delta(
        train, feature, config.model, derive_seed(seed, "ablation"),
        a.ablation_folds, a.decision_threshold)));
  }

  out.step4 = Json{{"protected_attribute", ds.groups().name},
                   {"evaluation", {{"split", "test"}, {"rows", test.rows()}}},
                   {"group_metrics", ledger::group_metrics_to_json(table)},
                   {"findings", std::move(findings_json)},
                   {"any_exceeded", out.any_exceeded},
                   {"indirect_identification", std::move(indirect)},
                   {"chi_squared", std::move(chi)},
                   {"ablations", std::move(ablations)}};
  return out;
}

PlanSections run_mitigation(const AuditConfig& config, uint64_t seed,
                            const LoadedDataset& data, const TrainedModel& model) {
  const auto& m = config.mitigation;
  const TabularDataset& ds = data.dataset;
  const TabularDataset train = ds.subset(model.split.train);
  const TabularDataset test = ds.subset(model.split.test);

  std::optional<mitigation::AttributeAwareModel> attribute;
  std::optional<mitigation::BlindSeparateEnsemble> ensemble;
  std::vector<mitigation::Candidate> candidates;
  PlanSections out;
  for (const auto& method : m.methods) {
    if (method == ledger::kMethodAttribute) {
      attribute.emplace(mitigation::train_with_attribute(
          train, config.model, derive_seed(seed, "attribute-reinstatement")));
      candidates.push_back({method, &*attribute});
      out.model_files.emplace_back("attribute_model.json",
                                   mitigation::attribute_model_to_json(*attribute));
    } else {
      ensemble.emplace(mitigation::train_blind_separate(
          train, config.model, derive_seed(seed, "blind-separate"),
          m.min_group_support));
      candidates.push_back({method, &*ensemble});
      out.model_files.emplace_back("blind_separate.json",
                                   mitigation::ensemble_to_json(*ensemble));
    }
  }
  const auto reports = mitigation::compare_interventions(
      model.forest, candidates, test, m.priority_metric,
      config.audit.compare_groups, config.audit.decision_threshold);

  // Largest reduction among candidates that narrow the gap without degrading
  // the leading group and stay within the accuracy budget.
  std::string adopted = "none (keep the baseline model)";
  double best = 0.0;
  for (const auto& r : reports) {
    if (r.verdict != "improved" || r.narrowed_by_degrading ||
        -r.accuracy_delta > m.max_accuracy_loss || !r.relative_reduction) {
      continue;
    }
    if (*r.relative_reduction > best) {
      best = *r.relative_reduction;
      adopted = r.name;
    }
  }
  Json interventions = Json::array();
  for (const auto& r : reports) interventions.push_back(ledger::intervention_to_json(r));

  Json ensemble_json = nullptr;
  if (ensemble) {
    Json members = Json::array();
    for (const auto& mem : ensemble->members()) {
      members.push_back(Json{{"group", mem.group},
                             {"merged_groups", mem.merged_groups},
                             {"rows", mem.rows}});
    }
    Json excluded = Json::array();
    for (const auto& x : ensemble->excluded()) {
      excluded.push_back(Json{{"group", x.group}, {"rows", x.rows}});
    }
    ensemble_json = Json{{"members", std::move(members)},
                         {"excluded", std::move(excluded)},
                         {"min_group_support", ensemble->min_group_support()}};
  }

  out.step5 = Json{
      {"priority_metric", metric_name(m.priority_metric)},
      {"groups", config.audit.compare_groups},
      {"interventions", std::move(interventions)},
      {"adopted", adopted},
      {"adoption_rule",
       "largest relative reduction in " + std::string(metric_name(m.priority_metric)) +
           " disparity among interventions that narrow it without worsening "
           "the leading group and lose at most " +
           format_percent(m.max_accuracy_loss, 1) + " overall accuracy"},
      {"max_accuracy_loss", m.max_accuracy_loss},
      {"ensemble", std::move(ensemble_json)}};
  out.step6 = Json{{"limitations", config.monitoring.limitations},
                   {"follow_up", config.monitoring.follow_up},
                   {"blind_spot_overrides", Json::array()}};
  out.interventions_markdown =
      "# Intervention comparison\n\n" + mitigation::interventions_to_markdown(reports) +
      "\nAdopted: " + adopted + "\n";
  return out;
}

std::string curve_file_stem(const std::string& feature) {
  std::string out = "curve_";
  for (const char c : feature) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    out += ok ? c : '_';
  }
  return out;
}

ExplainSections run_explain(const AuditConfig& config, uint64_t seed,
                            const LoadedDataset& data, const TrainedModel& model,
                            const std::vector<std::string>& features,
                            const std::vector<std::string>& artifact_formats) {
  const auto& e = config.explain;
  const TabularDataset test = data.dataset.subset(model.split.test);
  const TabularDataset eval =
      e.balanced ? curves::balance_eval_set(test, derive_seed(seed, "balance-eval-set"))
                 : test;
  ExplainSections out;
  for (const auto& feature : features) {
    curves::RiskCurve curve =
        curves::feature_risk_curve(model.forest, eval, feature, e.n_points, e.balanced);
    Json artifacts = Json::array();
    for (const auto& ext : artifact_formats) {
      artifacts.push_back(curve_file_stem(feature) + "." + ext);
    }
    Json entry{{"feature", feature},
               {"process",
                {{"scope", e.scope},
                 {"technique",
                  "feature risk curve: percentile sweep of the feature with the "
                  "model queried as an oracle"},
                 {"discussion", e.discussion},
                 {"plan", e.plan},
                 {"monitoring", e.monitoring}}},
               {"n_points", e.n_points},
               {"balanced", e.balanced},
               {"balancing", e.balanced ? "undersampling" : "none"},
               {"eval_set_size", eval.rows()},
               {"oracle", model.forest.info().kind},
               {"artifacts", std::move(artifacts)},
               {"points", ledger::curve_points_to_json(curve.points)}};
    out.curves.push_back(CurveRun{std::move(curve), std::move(entry)});
  }
  if (e.blind_spot) {
    const auto& b = *e.blind_spot;
    const auto candidates =
        curves::intensity_candidates(test, b.feature, b.intensity_percentile);
    const auto flagged = curves::flag_blind_spot_players(
        test, model.forest, b.feature, b.intensity_percentile, b.threshold);
    std::vector<size_t> rows;
    for (const size_t i : flagged) rows.push_back(model.split.test[i]);
    std::sort(rows.begin(), rows.end());
    out.blind_spot_overrides.push_back(Json{{"feature", b.feature},
                                            {"intensity_percentile", b.intensity_percentile},
                                            {"threshold", b.threshold},
                                            {"candidates", candidates.size()},
                                            {"flagged", flagged.size()},
                                            {"rows", index_array(rows)}});
  }
  return out;
}

namespace {

void compare_section(const std::string& key, const Json& expected, const Json& actual,
                     std::vector<std::string>& issues) {
  for (const auto& d : ledger::numeric_differences(ledger::canonicalize(expected),
                                                   ledger::canonicalize(actual), 1e-9)) {
    issues.push_back(key + d);
  }
}

}  // namespace

std::vector<std::string> verify_ledger(const ledger::AuditLedger& led,
                                       const AuditConfig& config,
                                       const fs::path& out_dir) {
  std::vector<std::string> issues;
  for (const auto& t : led.tampered_sections()) {
    issues.push_back(t + ": content does not match its recorded hash");
  }
  if (!led.has("provenance")) {
    if (led.has("step1_scope")) issues.push_back("provenance: missing");
    return issues;
  }
  const Json& prov = led.section("provenance");
  const uint64_t seed = led.seed();

  std::optional<LoadedDataset> data;
  if (config.data.synth) {
    const SynthArtifacts synth = run_synth(config, seed);
    data = dataset_from_text(config, synth.dataset_csv, kDatasetFile);
  } else {
    data = load_dataset(config, out_dir);
  }
  if (data->sha256 != prov.at("dataset").at("sha256").get<std::string>()) {
    issues.push_back("provenance/dataset/sha256: recomputed dataset differs (" +
                     data->sha256.substr(0, 12) + ")");
    return issues;
  }
  const TrainedModel model = train_model(config, seed, *data);
  const std::string model_sha = ledger::sha256_hex(model_text(model.document));
  if (model_sha != prov.at("model").at("sha256").get<std::string>()) {
    issues.push_back("provenance/model/sha256: retrained model differs");
    return issues;
  }

  const AuditSections audit = run_audit(config, seed, *data, model, model_sha);
  compare_section("provenance", audit.provenance, prov, issues);
  if (led.has("guideline_tags")) {
    compare_section("guideline_tags", audit.guideline_tags, led.section("guideline_tags"), issues);
  }
  const Json* audit_steps[4] = {&audit.step1, &audit.step2, &audit.step3, &audit.step4};
  for (int i = 0; i < 4; ++i) {
    const std::string key(ledger::kStepKeys[i]);
    if (led.has(key)) compare_section(key, *audit_steps[i], led.section(key), issues);
  }

  const Json& entries = led.section("explainability_entries");
  const bool needs_plan = led.has("step5_plan") || led.has("step6_monitoring");
  if (needs_plan) {
    const PlanSections plan = run_mitigation(config, seed, *data, model);
    if (led.has("step5_plan")) {
      compare_section("step5_plan", plan.step5, led.section("step5_plan"), issues);
    }
    if (led.has("step6_monitoring")) {
      Json expected = plan.step6;
      if (!led.section("step6_monitoring").at("blind_spot_overrides").empty()) {
        expected["blind_spot_overrides"] =
            run_explain(config, seed, *data, model, {}, {}).blind_spot_overrides;
      }
      compare_section("step6_monitoring", expected, led.section("step6_monitoring"), issues);
    }
  }
  for (size_t i = 0; i < entries.size(); ++i) {
    const Json& entry = entries[i];
    std::vector<std::string> formats;
    for (const auto& a : entry.at("artifacts")) {
      const std::string name = a.get<std::string>();
      formats.push_back(name.substr(name.rfind('.') + 1));
    }
    const ExplainSections ex = run_explain(
        config, seed, *data, model, {entry.at("feature").get<std::string>()}, formats);
    compare_section("explainability_entries/" + std::to_string(i),
                    ex.curves.front().entry, entry, issues);
  }
  return issues;
}

}  // namespace fairlens::cli
