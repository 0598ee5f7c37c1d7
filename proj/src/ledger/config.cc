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

#include "fairlens/ledger/config.h"

#include <algorithm>
#include <cmath>

#include "fairlens/core/io.h"
#include "fairlens/core/model_io.h"
#include "fairlens/ledger/guidelines.h"

namespace fairlens::ledger {
namespace {

std::vector<std::string> string_list(StrictObject& obj, const std::string& key) {
  const std::string pointer = obj.child_pointer(key);
  const Json& arr = json_array(obj.at(key), pointer);
  std::vector<std::string> out;
  for (size_t i = 0; i < arr.size(); ++i) {
    out.push_back(json_string(arr[i], json_pointer_append(pointer, std::to_string(i))));
  }
  return out;
}

// Rethrows a plain Error as a schema error at `pointer`.
template <typename F>
auto at_pointer(const std::string& pointer, F&& f) {
  try {
    return f();
  } catch (const JsonSchemaError&) {
    throw;
  } catch (const Error& e) {
    throw JsonSchemaError(pointer, e.what());
  }
}

void require(bool ok, const std::string& pointer, const std::string& message) {
  if (!ok) throw JsonSchemaError(pointer, message);
}

DataConfig parse_data(const Json& value, const std::string& pointer,
                      const std::filesystem::path& base_dir) {
  StrictObject obj(value, pointer);
  DataConfig d;
  const bool has_synth = obj.has("synth");
  const bool has_csv = obj.has("csv");
  require(has_synth != has_csv, pointer, "declare exactly one of 'synth' or 'csv'");
  if (has_synth) {
    const Json& s = obj.at("synth");
    d.synth = synth::synth_config_from_json(s, obj.child_pointer("synth"));
    if (s.is_object() && s.contains("preset")) d.synth_preset = s.at("preset").get<std::string>();
    d.schema = d.synth->schema();
    obj.maybe("csv");
  } else {
    obj.maybe("synth");
    std::filesystem::path csv = obj.string("csv");
    d.csv = csv.is_absolute() ? csv : base_dir / csv;
    d.schema.label_column = obj.string("label_column");
    d.schema.group_column = obj.string("group_column");
    d.schema.categories = string_list(obj, "categories");
    d.schema.unspecified = obj.string("unspecified");
    at_pointer(obj.child_pointer("categories"), [&] {
      CategorySet(d.schema.categories, d.schema.unspecified);
      return 0;
    });
  }
  obj.finish();
  return d;
}

void check_groups(const std::vector<std::string>& groups,
                  const std::vector<std::string>& categories,
                  const std::string& pointer) {
  for (size_t i = 0; i < groups.size(); ++i) {
    require(std::find(categories.begin(), categories.end(), groups[i]) !=
                categories.end(),
            json_pointer_append(pointer, std::to_string(i)),
            "unknown category '" + groups[i] + "'");
  }
}

AuditSectionConfig parse_audit(const Json& value, const std::string& pointer,
                               const std::vector<std::string>& categories) {
  StrictObject obj(value, pointer);
  AuditSectionConfig a;
  if (obj.has("decision_threshold")) {
    a.decision_threshold = obj.number("decision_threshold");
    require(a.decision_threshold >= 0.0 && a.decision_threshold <= 1.0,
            obj.child_pointer("decision_threshold"), "must lie in [0, 1]");
  }
  if (obj.has("metrics")) {
    a.metrics.clear();
    const auto names = string_list(obj, "metrics");
    require(!names.empty(), obj.child_pointer("metrics"), "at least one metric");
    for (size_t i = 0; i < names.size(); ++i) {
      a.metrics.push_back(at_pointer(
          json_pointer_append(obj.child_pointer("metrics"), std::to_string(i)),
          [&] { return parse_metric(names[i]); }));
    }
  }
  if (const Json* t = obj.maybe("tolerance")) {
    StrictObject tol(*t, obj.child_pointer("tolerance"));
    if (tol.has("source")) {
      a.tolerance_source = at_pointer(tol.child_pointer("source"), [&] {
        return audit::parse_provenance(tol.string("source"));
      });
    }
    if (tol.has("half_width")) {
      a.half_width = tol.number("half_width");
      require(a.half_width > 0.0 && a.half_width < 1.0,
              tol.child_pointer("half_width"), "must lie in (0, 1)");
    }
    tol.finish();
  }
  if (obj.has("cv_folds")) {
    a.cv_folds = obj.unsigned_integer("cv_folds");
    require(a.cv_folds >= 2, obj.child_pointer("cv_folds"), "must be at least 2");
  }
  if (obj.has("compare_groups")) {
    a.compare_groups = string_list(obj, "compare_groups");
    require(a.compare_groups.size() >= 2, obj.child_pointer("compare_groups"),
            "at least two groups");
    check_groups(a.compare_groups, categories, obj.child_pointer("compare_groups"));
  }
  if (const Json* ii = obj.maybe("indirect_identification")) {
    StrictObject o(*ii, obj.child_pointer("indirect_identification"));
    if (o.has("enabled")) a.indirect_identification = o.boolean("enabled");
    if (o.has("folds")) {
      a.indirect_folds = o.unsigned_integer("folds");
      require(a.indirect_folds >= 2, o.child_pointer("folds"), "must be at least 2");
    }
    if (o.has("uplift_threshold")) a.uplift_threshold = o.number("uplift_threshold");
    o.finish();
  }
  if (const Json* b = obj.maybe("benchmark")) {
    StrictObject o(*b, obj.child_pointer("benchmark"));
    BenchmarkConfig bc;
    bc.name = o.string("name");
    const Json* props = o.maybe("proportions");
    require(props != nullptr && props->is_object() && props->size() >= 2,
            o.child_pointer("proportions"),
            "expected an object of at least two group proportions");
    StrictObject p(*props, o.child_pointer("proportions"));
    // Category order, not key order.
    for (const auto& c : categories) {
      if (!p.has(c)) continue;
      bc.groups.push_back(c);
      bc.proportions.push_back(p.number(c));
    }
    for (const auto& [k, unused] : props->items()) {
      require(std::find(categories.begin(), categories.end(), k) != categories.end(),
              p.child_pointer(k), "unknown category '" + k + "'");
    }
    p.finish();
    o.finish();
    a.benchmark = std::move(bc);
  }
  if (obj.has("ablation_features")) a.ablation_features = string_list(obj, "ablation_features");
  if (obj.has("ablation_folds")) {
    a.ablation_folds = obj.unsigned_integer("ablation_folds");
    require(a.ablation_folds >= 2, obj.child_pointer("ablation_folds"),
            "must be at least 2");
  }
  obj.finish();
  return a;
}

MitigationConfig parse_mitigation(const Json& value, const std::string& pointer) {
  StrictObject obj(value, pointer);
  MitigationConfig m;
  if (obj.has("priority_metric")) {
    m.priority_metric = at_pointer(obj.child_pointer("priority_metric"),
                                   [&] { return parse_metric(obj.string("priority_metric")); });
  }
  if (obj.has("methods")) {
    m.methods = string_list(obj, "methods");
    require(!m.methods.empty(), obj.child_pointer("methods"), "at least one method");
    for (size_t i = 0; i < m.methods.size(); ++i) {
      require(m.methods[i] == kMethodAttribute || m.methods[i] == kMethodBlindSeparate,
              json_pointer_append(obj.child_pointer("methods"), std::to_string(i)),
              "unknown method '" + m.methods[i] +
                  "' (expected attribute-reinstatement or blind-separate)");
    }
  }
  if (obj.has("min_group_support")) {
    m.min_group_support = obj.unsigned_integer("min_group_support");
    require(m.min_group_support >= 1, obj.child_pointer("min_group_support"),
            "must be at least 1");
  }
  if (obj.has("max_accuracy_loss")) {
    m.max_accuracy_loss = obj.number("max_accuracy_loss");
    require(m.max_accuracy_loss >= 0.0, obj.child_pointer("max_accuracy_loss"),
            "must be non-negative");
  }
  obj.finish();
  return m;
}

ExplainConfig parse_explain(const Json& value, const std::string& pointer) {
  StrictObject obj(value, pointer);
  ExplainConfig e;
  if (obj.has("scope")) e.scope = obj.string("scope");
  if (obj.has("features")) e.features = string_list(obj, "features");
  if (obj.has("n_points")) {
    e.n_points = obj.unsigned_integer("n_points");
    require(e.n_points >= 1, obj.child_pointer("n_points"), "must be at least 1");
  }
  if (obj.has("balanced")) e.balanced = obj.boolean("balanced");
  if (obj.has("discussion")) e.discussion = obj.string("discussion");
  if (obj.has("plan")) e.plan = obj.string("plan");
  if (obj.has("monitoring")) e.monitoring = obj.string("monitoring");
  if (const Json* b = obj.maybe("blind_spot")) {
    StrictObject o(*b, obj.child_pointer("blind_spot"));
    BlindSpotConfig bs;
    bs.feature = o.string("feature");
    if (o.has("intensity_percentile")) {
      bs.intensity_percentile = o.number("intensity_percentile");
      require(bs.intensity_percentile > 0.0 && bs.intensity_percentile <= 1.0,
              o.child_pointer("intensity_percentile"), "must lie in (0, 1]");
    }
    if (o.has("threshold")) bs.threshold = o.number("threshold");
    o.finish();
    e.blind_spot = std::move(bs);
  }
  obj.finish();
  return e;
}

AuditConfig parse_document(const Json& doc, const std::filesystem::path& base_dir) {
  StrictObject obj(doc, "");
  AuditConfig c;
  c.document = doc;
  c.name = obj.string("name");
  if (obj.has("operator_alias")) {
    c.operator_alias = obj.string("operator_alias");
  } else {
    obj.maybe("operator_alias");
  }
  if (obj.has("seed")) {
    c.seed = obj.unsigned_integer("seed");
  } else {
    obj.maybe("seed");
  }
  c.data = parse_data(obj.at("data"), obj.child_pointer("data"), base_dir);
  const std::vector<std::string>& categories = c.data.schema.categories;
  require(c.data.schema.group_column.has_value(), "/data",
          "a protected attribute column is required for an audit");
  if (const Json* m = obj.maybe("model")) {
    c.model = forest_params_from_json(*m, obj.child_pointer("model"));
  }
  if (const Json* s = obj.maybe("split")) {
    StrictObject o(*s, obj.child_pointer("split"));
    if (o.has("test_fraction")) {
      c.test_fraction = o.number("test_fraction");
      require(c.test_fraction > 0.0 && c.test_fraction < 1.0,
              o.child_pointer("test_fraction"), "must lie in (0, 1)");
    }
    o.finish();
  }
  {
    StrictObject o(obj.at("scope"), obj.child_pointer("scope"));
    c.scope.model = o.string("model");
    c.scope.justification = o.string("justification");
    if (o.has("excluded")) c.scope.excluded = string_list(o, "excluded");
    o.finish();
  }
  {
    const std::string pointer = obj.child_pointer("categories");
    const Json& arr = json_array(obj.at("categories"), pointer);
    require(!arr.empty(), pointer, "list at least one bias category");
    for (size_t i = 0; i < arr.size(); ++i) {
      StrictObject o(arr[i], json_pointer_append(pointer, std::to_string(i)));
      CategoryConfig cat;
      cat.name = o.string("name");
      cat.status = o.string("status");
      require(cat.status == "analysed" || cat.status == "not-collected" ||
                  cat.status == "deferred",
              o.child_pointer("status"),
              "expected one of: analysed, not-collected, deferred");
      cat.rationale = o.string("rationale");
      o.finish();
      c.categories.push_back(std::move(cat));
    }
  }
  if (const Json* a = obj.maybe("audit")) {
    c.audit = parse_audit(*a, obj.child_pointer("audit"), categories);
  }
  if (c.audit.compare_groups.empty()) {
    for (const auto& cat : categories) {
      if (cat != c.data.schema.unspecified) c.audit.compare_groups.push_back(cat);
    }
    require(c.audit.compare_groups.size() >= 2, "/audit/compare_groups",
            "fewer than two declared categories to compare");
  }
  if (const Json* m = obj.maybe("mitigation")) {
    c.mitigation = parse_mitigation(*m, obj.child_pointer("mitigation"));
  }
  if (const Json* e = obj.maybe("explain")) {
    c.explain = parse_explain(*e, obj.child_pointer("explain"));
  }
  if (obj.has("guidelines")) {
    c.guidelines = string_list(obj, "guidelines");
    for (size_t i = 0; i < c.guidelines.size(); ++i) {
      at_pointer(json_pointer_append(obj.child_pointer("guidelines"), std::to_string(i)),
                 [&] { return find_guideline(c.guidelines[i]); });
    }
  }
  if (const Json* m = obj.maybe("monitoring")) {
    StrictObject o(*m, obj.child_pointer("monitoring"));
    if (o.has("limitations")) c.monitoring.limitations = string_list(o, "limitations");
    if (o.has("follow_up")) c.monitoring.follow_up = string_list(o, "follow_up");
    o.finish();
  }
  obj.finish();
  return c;
}

}  // namespace

AuditConfig parse_config(std::string_view text, const std::string& source,
                         const std::filesystem::path& base_dir) {
  Json doc;
  try {
    doc = parse_json_text(text, source);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  try {
    return parse_document(doc, base_dir);
  } catch (const JsonSchemaError& e) {
    throw ConfigError(anchored_message(text, source, e));
  }
}

AuditConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text, path.string(), path.parent_path());
}

}  // namespace fairlens::ledger
