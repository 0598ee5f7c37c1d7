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

#include "fairlens/ledger/report.h"

#include "fairlens/core/io.h"

namespace fairlens::ledger {
namespace {

std::string pct(const Json& v) {
  return v.is_null() ? "n/a" : format_percent(v.get<double>(), 1);
}

std::string num(const Json& v, int digits = 6) {
  return v.is_null() ? "n/a" : format_double(v.get<double>(), digits);
}

std::string join(const Json& strings, const std::string& sep = ", ") {
  std::string out;
  for (const auto& s : strings) {
    if (!out.empty()) out += sep;
    out += s.get<std::string>();
  }
  return out;
}

// Keeps table cells on one line.
std::string cell(const std::string& text) {
  std::string out;
  for (const char c : text) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

constexpr const char* kPending = "_Pending: not yet recorded._\n";

void heading(std::string& out, int step) {
  out += "\n## Step " + std::to_string(step + 1) + ": " +
         std::string(kStepTitles[step]) + "\n\n";
}

void render_scope(std::string& out, const Json& s) {
  out += "**Model in scope:** " + s.at("model").get<std::string>() + "\n\n";
  out += "**Justification:** " + s.at("justification").get<std::string>() + "\n";
  if (!s.at("excluded").empty()) {
    out += "\nExcluded for now:\n\n";
    for (const auto& e : s.at("excluded")) out += "- " + e.get<std::string>() + "\n";
  }
}

void render_categories(std::string& out, const Json& cats) {
  out += "| Category | Status | Rationale |\n|---|---|---|\n";
  for (const auto& c : cats) {
    out += "| " + cell(c.at("name").get<std::string>()) + " | " +
           c.at("status").get<std::string>() + " | " +
           cell(c.at("rationale").get<std::string>()) + " |\n";
  }
}

void render_metrics(std::string& out, const Json& m) {
  out += "Decision threshold: " + num(m.at("decision_threshold")) + "\n\n";
  out += "Compared groups: " + join(m.at("compare_groups")) + "\n\n";
  out += "| Metric | Definition | Tolerance | Source |\n|---|---|---|---|\n";
  for (const auto& def : m.at("metrics")) {
    const std::string name = def.at("name").get<std::string>();
    std::string tolerance = "none";
    std::string source = "-";
    for (const auto& t : m.at("thresholds")) {
      if (t.at("metric") == name) {
        tolerance = "+/- " + pct(t.at("half_width"));
        source = t.at("provenance").get<std::string>();
        if (source == "derived-from-cv" && !m.at("cv_folds").is_null()) {
          source += " (" + std::to_string(m.at("cv_folds").get<uint64_t>()) +
                    " folds)";
        }
      }
    }
    out += "| " + name + " | " + cell(def.at("definition").get<std::string>()) +
           " | " + tolerance + " | " + source + " |\n";
  }
}

void render_findings(std::string& out, const Json& f) {
  const Json& table = f.at("group_metrics");
  const Json& groups = table.at("groups");
  std::string names;
  for (const auto& g : groups) {
    names += (names.empty() ? "" : " / ") + g.at("group").get<std::string>();
  }
  out += "Protected attribute: " + f.at("protected_attribute").get<std::string>() +
         ". Evaluated on " +
         std::to_string(f.at("evaluation").at("rows").get<uint64_t>()) +
         " rows (" + f.at("evaluation").at("split").get<std::string>() +
         ").\n\n";

  uint64_t total = 0;
  for (const auto& g : groups) total += g.at("support").get<uint64_t>();
  Json shares = Json::array();
  for (const auto& g : groups) {
    shares.push_back(Json{
        {"group", g.at("group")},
        {"share", total == 0 ? Json(nullptr)
                             : Json(static_cast<double>(g.at("support").get<uint64_t>()) /
                                    static_cast<double>(total))}});
  }
  out += "| Measure | " + names + " |\n|---|---|\n";
  out += "| Group balance in evaluation data | " + group_value_row(shares, "share") +
         " |\n";
  out += "| Outcome rate | " + group_value_row(groups, "outcome_rate") + " |\n";
  out += "| TPR | " + group_value_row(groups, "tpr") + " |\n";
  out += "| TNR | " + group_value_row(groups, "tnr") + " |\n";
  out += "| Accuracy | " + group_value_row(groups, "accuracy") + " |\n";
  out += "| Overall accuracy | " + pct(table.at("overall").at("accuracy")) + " |\n";

  out += "\n### Findings\n\n";
  if (f.at("findings").empty()) {
    out += "No comparable group pairs.\n";
  } else {
    out += "| Metric | Groups | Values | Disparity | Tolerance | Exceeded | "
           "Favoured |\n|---|---|---|---|---|---|---|\n";
    for (const auto& x : f.at("findings")) {
      out += "| " + x.at("metric").get<std::string>() + " | " +
             x.at("group_a").get<std::string>() + " vs " +
             x.at("group_b").get<std::string>() + " | " + pct(x.at("value_a")) +
             " / " + pct(x.at("value_b")) + " | " + pct(x.at("disparity")) +
             " | +/- " + pct(x.at("half_width")) + " | " +
             (x.at("exceeded").get<bool>() ? "yes" : "no") + " | " +
             x.at("favoured").get<std::string>() + " |\n";
    }
  }
  out += std::string("\nTolerance exceeded: ") +
         (f.at("any_exceeded").get<bool>() ? "yes" : "no") + "\n";

  out += "\n### Indirect identification\n\n";
  const Json& ii = f.at("indirect_identification");
  if (ii.is_null()) {
    out += "Not run.\n";
  } else {
    out += "A model of the audited family predicting " +
           ii.at("attribute").get<std::string>() + " reached " +
           pct(ii.at("accuracy")) + " accuracy against a majority baseline of " +
           pct(ii.at("baseline")) + " (" + ii.at("majority_category").get<std::string>() +
           "), uplift " + pct(ii.at("uplift")) + " over " +
           std::to_string(ii.at("folds").get<uint64_t>()) + " folds. Verdict: " +
           (ii.at("identifiable").get<bool>() ? "identifiable" : "not identifiable") +
           " (uplift threshold " + pct(ii.at("uplift_threshold")) + ").\n";
  }

  if (!f.at("chi_squared").empty()) {
    out += "\n### Benchmark comparison (chi-squared)\n\n";
    out += "| Test | Groups | Observed | Expected | Statistic | df | p-value |\n"
           "|---|---|---|---|---|---|---|\n";
    for (const auto& c : f.at("chi_squared")) {
      std::string observed;
      std::string expected;
      for (const auto& v : c.at("observed")) {
        observed += (observed.empty() ? "" : " / ") + num(v);
      }
      for (const auto& v : c.at("expected")) {
        expected += (expected.empty() ? "" : " / ") + num(v);
      }
      out += "| " + cell(c.at("name").get<std::string>()) + " | " +
             join(c.at("groups"), " / ") + " | " + observed + " | " + expected +
             " | " + num(c.at("statistic")) + " | " +
             std::to_string(c.at("degrees_of_freedom").get<uint64_t>()) + " | " +
             (c.at("p_value").get<double>() == 0.0 ? std::string("< 1e-300")
                                                   : num(c.at("p_value"))) +
             " |\n";
    }
  }

  for (const auto& a : f.at("ablations")) {
    out += "\n### Ablation: " + a.at("feature").get<std::string>() + "\n\n";
    out += "Change in out-of-fold metrics when the feature is removed (" +
           std::to_string(a.at("folds").get<uint64_t>()) + " folds).\n\n";
    out += "| Group | TPR | TNR | Accuracy |\n|---|---|---|---|\n";
    for (const auto& d : a.at("deltas")) {
      out += "| " + d.at("group").get<std::string>() + " | " + pct(d.at("tpr")) +
             " | " + pct(d.at("tnr")) + " | " + pct(d.at("accuracy")) + " |\n";
    }
  }
}

void render_plan(std::string& out, const Json& p) {
  out += "Priority metric: " + p.at("priority_metric").get<std::string>() +
         " across " + join(p.at("groups")) + ".\n\n";
  out += "| Intervention | Disparity before | Disparity after | Reduction | "
         "Accuracy before | Accuracy after | Verdict |\n"
         "|---|---|---|---|---|---|---|\n";
  for (const auto& r : p.at("interventions")) {
    out += "| " + r.at("name").get<std::string>() + " | " +
           pct(r.at("baseline_disparity")) + " | " +
           pct(r.at("intervention_disparity")) + " | " +
           pct(r.at("relative_reduction")) + " | " +
           pct(r.at("baseline_accuracy")) + " | " +
           pct(r.at("intervention_accuracy")) + " | " +
           r.at("verdict").get<std::string>() +
           (r.at("narrowed_by_degrading").get<bool>()
                ? " (gap closed by degrading the leading group)"
                : "") +
           " |\n";
  }
  for (const auto& r : p.at("interventions")) {
    out += "\nPer-group " + p.at("priority_metric").get<std::string>() + " under " +
           r.at("name").get<std::string>() + ": ";
    std::string parts;
    for (const auto& s : r.at("shifts")) {
      parts += (parts.empty() ? "" : "; ") + s.at("group").get<std::string>() +
               " " + pct(s.at("before")) + " -> " + pct(s.at("after")) + " (" +
               s.at("direction").get<std::string>() + ")";
    }
    out += parts + ".\n";
  }
  if (!p.at("ensemble").is_null()) {
    const Json& e = p.at("ensemble");
    out += "\nBlind-separate members (minimum support " +
           std::to_string(e.at("min_group_support").get<uint64_t>()) + "): ";
    std::string parts;
    for (const auto& m : e.at("members")) {
      std::string part = m.at("group").get<std::string>() + " (" +
                         std::to_string(m.at("rows").get<uint64_t>()) + " rows";
      if (!m.at("merged_groups").empty()) {
        part += ", merged " + join(m.at("merged_groups"));
      }
      parts += (parts.empty() ? "" : "; ") + part + ")";
    }
    out += parts + ".\n";
    for (const auto& x : e.at("excluded")) {
      out += "\nExcluded from the ensemble: " + x.at("group").get<std::string>() +
             " (" + std::to_string(x.at("rows").get<uint64_t>()) + " rows).\n";
    }
  }
  out += "\n**Adopted action:** " + p.at("adopted").get<std::string>() + "\n\n";
  out += "Adoption rule: " + p.at("adoption_rule").get<std::string>() + "\n";
}

void render_monitoring(std::string& out, const Json& m) {
  out += "Limitations:\n\n";
  if (m.at("limitations").empty()) out += "- none recorded\n";
  for (const auto& l : m.at("limitations")) out += "- " + l.get<std::string>() + "\n";
  out += "\nFollow-up:\n\n";
  if (m.at("follow_up").empty()) out += "- none recorded\n";
  for (const auto& l : m.at("follow_up")) out += "- " + l.get<std::string>() + "\n";
  if (!m.at("blind_spot_overrides").empty()) {
    out += "\nBlind-spot overrides (high-intensity players the model does not "
           "flag, for manual review):\n\n";
    out += "| Feature | Intensity percentile | Score threshold | Candidates | "
           "Flagged |\n|---|---|---|---|---|\n";
    for (const auto& b : m.at("blind_spot_overrides")) {
      out += "| " + b.at("feature").get<std::string>() + " | " +
             pct(b.at("intensity_percentile")) + " | " + num(b.at("threshold")) +
             " | " + std::to_string(b.at("candidates").get<uint64_t>()) + " | " +
             std::to_string(b.at("flagged").get<uint64_t>()) + " |\n";
    }
  }
}

void render_explainability(std::string& out, const Json& entries) {
  out += "\n## Explainability\n\n";
  if (entries.empty()) {
    out += kPending;
    return;
  }
  for (const auto& e : entries) {
    const Json& p = e.at("process");
    out += "### Feature risk curve: " + e.at("feature").get<std::string>() + "\n\n";
    out += "1. Scope: " + p.at("scope").get<std::string>() + "\n";
    out += "2. Technique: " + p.at("technique").get<std::string>() + " over " +
           std::to_string(e.at("n_points").get<uint64_t>()) +
           " percentiles, oracle " + e.at("oracle").get<std::string>() + "\n";
    out += "3. Analysis: " + std::to_string(e.at("eval_set_size").get<uint64_t>()) +
           " evaluation rows, " +
           (e.at("balanced").get<bool>() ? "label-balanced by undersampling"
                                         : "unbalanced") +
           "; artifacts: " + join(e.at("artifacts")) + "\n";
    out += "4. Discussion: " + p.at("discussion").get<std::string>() + "\n";
    out += "5. Plan: " + p.at("plan").get<std::string>() + "\n";
    out += "6. Monitoring: " + p.at("monitoring").get<std::string>() + "\n\n";
    out += "| Percentile | Feature value | Mean risk | p10 | p90 |\n"
           "|---|---|---|---|---|\n";
    const Json& points = e.at("points");
    const size_t n = points.size();
    for (size_t i = 0; i < n; ++i) {
      const size_t pctl = points[i].at("percentile").get<uint64_t>();
      // A tenth of the grid, plus both ends.
      if (i != 0 && i + 1 != n && (pctl * 10) % n != 0) continue;
      out += "| " + std::to_string(pctl) + " | " + num(points[i].at("feature_value")) +
             " | " + num(points[i].at("mean_risk"), 4) + " | " +
             num(points[i].at("p10"), 4) + " | " + num(points[i].at("p90"), 4) +
             " |\n";
    }
    out += "\n";
  }
}

}  // namespace

std::string group_value_row(const Json& groups, const std::string& field) {
  std::string out;
  for (const auto& g : groups) {
    if (!out.empty()) out += ' ';
    out += g.at("group").get<std::string>() + ": " + pct(g.at(field));
  }
  return out;
}

std::string render_report(const AuditLedger& ledger) {
  const Json& doc = ledger.doc();
  std::string title = "Algorithmic bias audit";
  if (doc.contains("provenance")) {
    const Json& config = doc.at("provenance").at("config");
    if (config.is_object() && config.contains("name") && config.at("name").is_string()) {
      title += ": " + config.at("name").get<std::string>();
    }
  }
  std::string out = "# " + title + "\n\n";
  out += "Ledger `" + ledger.id() + "`, schema " +
         doc.at("schema_version").get<std::string>() + ", seed " +
         std::to_string(ledger.seed()) + ".\n";
  if (!doc.at("operator_alias").is_null()) {
    out += "\nOperator alias: " + doc.at("operator_alias").get<std::string>() + "\n";
  }
  if (doc.contains("provenance")) {
    const Json& p = doc.at("provenance");
    out += "\nDataset `" + p.at("dataset").at("path").get<std::string>() + "` (" +
           std::to_string(p.at("dataset").at("rows").get<uint64_t>()) +
           " rows, " + p.at("dataset").at("source").get<std::string>() +
           ", sha256 " + p.at("dataset").at("sha256").get<std::string>().substr(0, 12) +
           "); model `" + p.at("model").at("path").get<std::string>() + "` (" +
           p.at("model").at("kind").get<std::string>() + ").\n";
    out += "\n" + p.at("evaluation").at("note").get<std::string>() + "\n";
  }

  out += "\n## Guidelines\n\n";
  if (!doc.contains("guideline_tags") || doc.at("guideline_tags").empty()) {
    out += kPending;
  } else {
    out += "| Guideline | Text | Principle |\n|---|---|---|\n";
    for (const auto& t : doc.at("guideline_tags")) {
      out += "| " + t.at("id").get<std::string>() + " | " +
             cell(t.at("text").get<std::string>()) + " | " +
             t.at("principle").get<std::string>() + " |\n";
    }
  }

  for (int step = 0; step < 6; ++step) {
    heading(out, step);
    const std::string key(kStepKeys[step]);
    if (!doc.contains(key)) {
      out += kPending;
      continue;
    }
    const Json& s = doc.at(key);
    switch (step) {
      case 0:
        render_scope(out, s);
        break;
      case 1:
        render_categories(out, s);
        break;
      case 2:
        render_metrics(out, s);
        break;
      case 3:
        render_findings(out, s);
        break;
      case 4:
        render_plan(out, s);
        break;
      case 5:
        render_monitoring(out, s);
        break;
    }
  }
  render_explainability(out, doc.at("explainability_entries"));
  return out;
}

}  // namespace fairlens::ledger
