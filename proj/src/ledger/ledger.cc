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

#include "fairlens/ledger/ledger.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fairlens/core/io.h"
#include "fairlens/ledger/serialize.h"
#include "fairlens/ledger/shape.h"

namespace fairlens::ledger {
namespace {

using S = Shape;

std::shared_ptr<Shape> strings() { return S::array(S::string()); }

std::shared_ptr<Shape> ledger_shape() {
  static const std::shared_ptr<Shape> shape = [] {
    auto timestamps = S::object();
    timestamps->required("created", S::string()).required("updated", S::string());

    auto dataset = S::object();
    dataset->required("path", S::string())
        .required("sha256", S::string())
        .required("rows", S::integer())
        .required("source", S::string());
    auto model = S::object();
    model->required("path", S::string())
        .required("sha256", S::string())
        .required("kind", S::string());
    auto evaluation = S::object();
    evaluation->required("split", S::string())
        .required("rows", S::integer())
        .required("disjoint_from_training", S::boolean())
        .required("note", S::string());
    auto provenance = S::object();
    provenance->required("config", S::any())
        .required("config_sha256", S::string())
        .required("dataset", dataset)
        .required("model", model)
        .required("evaluation", evaluation);

    auto tag = S::object();
    tag->required("id", S::string())
        .required("text", S::string())
        .required("principle", S::string());

    auto scope = S::object();
    scope->required("model", S::string())
        .required("justification", S::string())
        .required("excluded", strings());

    auto category = S::object();
    category->required("name", S::string())
        .required("status", S::one_of({"analysed", "not-collected", "deferred"}))
        .required("rationale", S::string());

    auto metric = S::object();
    metric->required("name", S::one_of({"TPR", "TNR", "accuracy"}))
        .required("definition", S::string());
    auto metrics = S::object();
    metrics->required("metrics", S::array(metric))
        .required("decision_threshold", S::number())
        .required("compare_groups", strings())
        .nullable("cv_folds", S::integer())
        .required("thresholds", S::array(tolerance_shape()));

    auto eval_rows = S::object();
    eval_rows->required("split", S::string()).required("rows", S::integer());
    auto findings = S::object();
    findings->required("protected_attribute", S::string())
        .required("evaluation", eval_rows)
        .required("group_metrics", group_metrics_shape())
        .required("findings", S::array(finding_shape()))
        .required("any_exceeded", S::boolean())
        .nullable("indirect_identification", indirect_identification_shape())
        .required("chi_squared", S::array(chi_squared_shape()))
        .required("ablations", S::array(ablation_shape()));

    auto member = S::object();
    member->required("group", S::string())
        .required("merged_groups", strings())
        .required("rows", S::integer());
    auto excluded = S::object();
    excluded->required("group", S::string()).required("rows", S::integer());
    auto ensemble = S::object();
    ensemble->required("members", S::array(member))
        .required("excluded", S::array(excluded))
        .required("min_group_support", S::integer());
    auto plan = S::object();
    plan->required("priority_metric", S::one_of({"TPR", "TNR", "accuracy"}))
        .required("groups", strings())
        .required("interventions", S::array(intervention_shape()))
        .required("adopted", S::string())
        .required("adoption_rule", S::string())
        .required("max_accuracy_loss", S::number())
        .nullable("ensemble", ensemble);

    auto blind_spot = S::object();
    blind_spot->required("feature", S::string())
        .required("intensity_percentile", S::number())
        .required("threshold", S::number())
        .required("candidates", S::integer())
        .required("flagged", S::integer())
        .required("rows", S::array(S::integer()));
    auto monitoring = S::object();
    monitoring->required("limitations", strings())
        .required("follow_up", strings())
        .required("blind_spot_overrides", S::array(blind_spot));

    auto process = S::object();
    process->required("scope", S::string())
        .required("technique", S::string())
        .required("discussion", S::string())
        .required("plan", S::string())
        .required("monitoring", S::string());
    auto entry = S::object();
    entry->required("feature", S::string())
        .required("process", process)
        .required("n_points", S::integer())
        .required("balanced", S::boolean())
        .required("balancing", S::one_of({"none", "undersampling"}))
        .required("eval_set_size", S::integer())
        .required("oracle", S::string())
        .required("artifacts", strings())
        .required("points", S::array(curve_point_shape()));

    auto history = S::object();
    history->required("command", S::string())
        .required("timestamp", S::string())
        .required("sections", strings());

    auto doc = S::object();
    doc->required("schema_version", S::string())
        .required("ledger_id", S::string())
        .nullable("operator_alias", S::string())
        .required("seed", S::integer())
        .required("timestamps", timestamps)
        .optional("provenance", provenance)
        .optional("guideline_tags", S::array(tag))
        .optional("step1_scope", scope)
        .optional("step2_categories", S::array(category))
        .optional("step3_metrics", metrics)
        .optional("step4_findings", findings)
        .optional("step5_plan", plan)
        .optional("step6_monitoring", monitoring)
        .required("explainability_entries", S::array(entry))
        .required("history", S::array(history))
        .required("section_hashes", S::map_of(S::string()));
    return doc;
  }();
  return shape;
}

bool is_hashed_section(std::string_view key) {
  return key != "schema_version" && key != "ledger_id" && key != "seed" &&
         key != "operator_alias" && key != "timestamps" && key != "history" &&
         key != "section_hashes";
}

}  // namespace

Json canonicalize(const Json& value) {
  if (value.is_number_float()) {
    const double v = value.get<double>();
    return Json(round_significant(v, kCanonicalDigits));
  }
  if (value.is_array()) {
    Json out = Json::array();
    for (const auto& v : value) out.push_back(canonicalize(v));
    return out;
  }
  if (value.is_object()) {
    Json out = Json::object();
    for (const auto& [k, v] : value.items()) out[k] = canonicalize(v);
    return out;
  }
  return value;
}

std::string canonical_compact(const Json& value) {
  return canonicalize(value).dump();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

AuditLedger::AuditLedger(std::string ledger_id, uint64_t seed,
                         std::string timestamp,
                         std::optional<std::string> operator_alias) {
  doc_ = Json{{"schema_version", kSchemaVersion},
              {"ledger_id", std::move(ledger_id)},
              {"operator_alias",
               operator_alias ? Json(*operator_alias) : Json(nullptr)},
              {"seed", seed},
              {"timestamps", {{"created", timestamp}, {"updated", timestamp}}},
              {"explainability_entries", Json::array()},
              {"history", Json::array()},
              {"section_hashes", Json::object()}};
}

AuditLedger AuditLedger::from_json(const Json& doc) {
  if (!doc.is_object()) throw JsonSchemaError("/", "expected an object");
  if (!doc.contains("schema_version")) {
    throw JsonSchemaError("/schema_version", "missing required field");
  }
  const Json& version = doc.at("schema_version");
  if (!version.is_string()) {
    throw JsonSchemaError("/schema_version", "expected a string");
  }
  if (version.get<std::string>() != kSchemaVersion) {
    throw LedgerMigrationError(
        "ledger schema '" + version.get<std::string>() +
        "' is not supported by this version (expects '" +
        std::string(kSchemaVersion) + "'); migrate the ledger explicitly");
  }
  ledger_shape()->validate(doc, "");
  if (doc.contains("step4_findings") && !doc.contains("step3_metrics")) {
    throw JsonSchemaError("/step4_findings",
                          "findings recorded without step 3 metric definitions");
  }
  if (doc.contains("step5_plan") && !doc.contains("step4_findings")) {
    throw JsonSchemaError("/step5_plan", "plan recorded without step 4 findings");
  }
  for (const auto& [key, unused] : doc.at("section_hashes").items()) {
    if (!doc.contains(key) || !is_hashed_section(key)) {
      throw JsonSchemaError(json_pointer_append("/section_hashes", key),
                            "hash for a section that does not exist");
    }
  }
  return AuditLedger(canonicalize(doc));
}

AuditLedger AuditLedger::parse(std::string_view text) {
  const Json doc = parse_json_text(text, "ledger");
  try {
    return from_json(doc);
  } catch (const JsonSchemaError& e) {
    throw LedgerError(anchored_message(text, "ledger", e));
  }
}

std::string AuditLedger::id() const { return doc_.at("ledger_id").get<std::string>(); }

uint64_t AuditLedger::seed() const { return doc_.at("seed").get<uint64_t>(); }

bool AuditLedger::has(std::string_view section) const {
  return doc_.contains(std::string(section));
}

const Json& AuditLedger::section(std::string_view section) const {
  const std::string key(section);
  if (!doc_.contains(key)) throw LedgerError("ledger has no section '" + key + "'");
  return doc_.at(key);
}

Json AuditLedger::hashed_content(const Json& doc, std::string_view key) {
  return doc.at(std::string(key));
}

void AuditLedger::rehash(std::string_view key) {
  doc_["section_hashes"][std::string(key)] =
      sha256_hex(canonical_compact(hashed_content(doc_, key)));
}

std::vector<std::string> AuditLedger::tampered_sections() const {
  std::vector<std::string> out;
  for (const auto& [key, hash] : doc_.at("section_hashes").items()) {
    if (!doc_.contains(key) ||
        sha256_hex(canonical_compact(hashed_content(doc_, key))) !=
            hash.get<std::string>()) {
      out.push_back(key);
    }
  }
  for (const auto& [key, unused] : doc_.items()) {
    if (is_hashed_section(key) && key != "explainability_entries" &&
        !doc_.at("section_hashes").contains(key)) {
      out.push_back(key);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void refuse_if_tampered(const AuditLedger& ledger) {
  const auto tampered = ledger.tampered_sections();
  if (!tampered.empty()) {
    std::string list;
    for (const auto& t : tampered) list += (list.empty() ? "" : ", ") + t;
    throw LedgerError("ledger sections changed since they were written: " + list);
  }
}

int step_index(std::string_view key) {
  for (int i = 0; i < 6; ++i) {
    if (kStepKeys[i] == key) return i;
  }
  return -1;
}

}  // namespace

bool AuditLedger::write_section(std::string_view key, const Json& content) {
  const std::string k(key);
  if (!is_hashed_section(k) || k == "explainability_entries") {
    throw LedgerError("'" + k + "' is not a writable section");
  }
  refuse_if_tampered(*this);
  const Json canonical = canonicalize(content);
  if (doc_.contains(k)) {
    if (doc_.at(k) == canonical) return false;
    throw LedgerError("ledger already records '" + k +
                      "' with different content; earlier sections are never "
                      "rewritten, start a new ledger instead");
  }
  const int step = step_index(k);
  if (step == 3 && !doc_.contains("step3_metrics")) {
    throw LedgerError("step 4 findings require step 3 metric definitions");
  }
  if (step == 4 && !doc_.contains("step4_findings")) {
    throw LedgerError("step 5 plan requires step 4 findings");
  }
  Json candidate = doc_;
  candidate[k] = canonical;
  ledger_shape()->validate(candidate, "");
  doc_ = std::move(candidate);
  rehash(k);
  return true;
}

bool AuditLedger::append_explainability(const Json& entry) {
  refuse_if_tampered(*this);
  const Json canonical = canonicalize(entry);
  auto& entries = doc_["explainability_entries"];
  for (const auto& e : entries) {
    if (e == canonical) return false;
  }
  Json candidate = doc_;
  candidate["explainability_entries"].push_back(canonical);
  ledger_shape()->validate(candidate, "");
  doc_ = std::move(candidate);
  rehash("explainability_entries");
  return true;
}

bool AuditLedger::append_blind_spot_overrides(const Json& overrides) {
  refuse_if_tampered(*this);
  if (!doc_.contains("step6_monitoring")) {
    throw LedgerError("blind-spot overrides need step 6 to be recorded first");
  }
  Json candidate = doc_;
  auto& list = candidate["step6_monitoring"]["blind_spot_overrides"];
  bool changed = false;
  for (const auto& o : overrides) {
    const Json canonical = canonicalize(o);
    if (std::find(list.begin(), list.end(), canonical) == list.end()) {
      list.push_back(canonical);
      changed = true;
    }
  }
  if (!changed) return false;
  ledger_shape()->validate(candidate, "");
  doc_ = std::move(candidate);
  rehash("step6_monitoring");
  return true;
}

void AuditLedger::record_history(const std::string& command,
                                 const std::string& timestamp,
                                 const std::vector<std::string>& sections) {
  doc_["history"].push_back(
      Json{{"command", command}, {"timestamp", timestamp}, {"sections", sections}});
  doc_["timestamps"]["updated"] = timestamp;
}

std::string AuditLedger::serialize() const {
  return canonicalize(doc_).dump(2) + "\n";
}

AuditLedger load_ledger(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const Json doc = parse_json_text(text, path.string());
  try {
    return AuditLedger::from_json(doc);
  } catch (const JsonSchemaError& e) {
    throw LedgerError(anchored_message(text, path.string(), e));
  }
}

void save_ledger(const AuditLedger& ledger, const std::filesystem::path& path) {
  write_file_atomic(path, ledger.serialize());
}

std::string make_ledger_id(const Json& config, uint64_t seed) {
  return sha256_hex(canonical_compact(config) + "#" + std::to_string(seed))
      .substr(0, 16);
}

namespace {

void diff(const Json& e, const Json& a, const std::string& pointer,
          double tolerance, const std::set<std::string>& ignored,
          std::vector<std::string>& out) {
  const std::string where = pointer.empty() ? "/" : pointer;
  if (e.is_number() && a.is_number()) {
    const double x = e.get<double>();
    const double y = a.get<double>();
    if (!(std::fabs(x - y) <= tolerance * std::max(1.0, std::fabs(x)))) {
      out.push_back(where + ": expected " + format_double(x, 17) + ", found " +
                    format_double(y, 17));
    }
    return;
  }
  if (e.type() != a.type()) {
    out.push_back(where + ": expected " + std::string(e.type_name()) +
                  ", found " + std::string(a.type_name()));
    return;
  }
  if (e.is_object()) {
    for (const auto& [k, v] : e.items()) {
      if (ignored.count(k)) continue;
      const std::string child = json_pointer_append(pointer, k);
      if (!a.contains(k)) {
        out.push_back(child + ": missing");
        continue;
      }
      diff(v, a.at(k), child, tolerance, ignored, out);
    }
    for (const auto& [k, v] : a.items()) {
      if (!ignored.count(k) && !e.contains(k)) {
        out.push_back(json_pointer_append(pointer, k) + ": unexpected");
      }
    }
    return;
  }
  if (e.is_array()) {
    if (e.size() != a.size()) {
      out.push_back(where + ": expected " + std::to_string(e.size()) +
                    " entries, found " + std::to_string(a.size()));
      return;
    }
    for (size_t i = 0; i < e.size(); ++i) {
      diff(e[i], a[i], json_pointer_append(pointer, std::to_string(i)),
           tolerance, ignored, out);
    }
    return;
  }
  if (e != a) out.push_back(where + ": expected " + e.dump() + ", found " + a.dump());
}

}  // namespace

std::vector<std::string> numeric_differences(
    const Json& expected, const Json& actual, double tolerance,
    const std::vector<std::string>& ignored_keys) {
  std::vector<std::string> out;
  diff(expected, actual, "", tolerance,
       std::set<std::string>(ignored_keys.begin(), ignored_keys.end()), out);
  return out;
}

}  // namespace fairlens::ledger
