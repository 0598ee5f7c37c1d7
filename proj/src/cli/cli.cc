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

#include "fairlens/cli/cli.h"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <ostream>

#include "CLI11.hpp"
#include "fairlens/cli/pipeline.h"
#include "fairlens/core/error.h"
#include "fairlens/core/io.h"
#include "fairlens/curves/export.h"
#include "fairlens/ledger/report.h"

namespace fairlens::cli {
namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string config;
  std::string ledger;
  std::string out = ".";
  std::string format;
  std::optional<uint64_t> seed;
  bool fail_on_bias = false;
  bool verify = false;
};

std::string now_timestamp() {
  if (const char* fixed = std::getenv("FAIRLENS_TIMESTAMP")) return fixed;
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<uint64_t> env_seed() {
  const char* v = std::getenv("FAIRLENS_SEED");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long s = std::strtoull(v, &end, 10);
  if (errno != 0 || *end != '\0' || v[0] == '-') {
    throw Error(std::string("FAIRLENS_SEED is not an unsigned integer: '") + v + "'");
  }
  return s;
}

// --seed, then FAIRLENS_SEED, then the config, then an existing ledger.
uint64_t resolve_seed(const Flags& flags, const ledger::AuditConfig& config,
                      const std::optional<ledger::AuditLedger>& existing) {
  std::optional<uint64_t> seed = flags.seed;
  if (!seed) seed = env_seed();
  if (!seed) seed = config.seed;
  if (existing) {
    if (seed && *seed != existing->seed()) {
      throw Error("seed " + std::to_string(*seed) +
                  " differs from the ledger's recorded seed " +
                  std::to_string(existing->seed()));
    }
    seed = existing->seed();
  }
  return seed.value_or(kDefaultSeed);
}

fs::path ledger_path(const Flags& flags) {
  return flags.ledger.empty() ? fs::path(flags.out) / kLedgerFile : fs::path(flags.ledger);
}

ledger::AuditConfig require_config(const Flags& flags) {
  if (flags.config.empty()) throw Error("--config is required for this command");
  return ledger::load_config(flags.config);
}

std::optional<ledger::AuditLedger> maybe_ledger(const fs::path& path) {
  if (!fs::exists(path)) return std::nullopt;
  return ledger::load_ledger(path);
}

ledger::AuditLedger require_ledger(const fs::path& path) {
  if (!fs::exists(path)) {
    throw Error("ledger not found at " + path.string() + "; run the audit command first");
  }
  return ledger::load_ledger(path);
}

void check_config_matches(const ledger::AuditLedger& led, const ledger::AuditConfig& config) {
  if (!led.has("provenance")) return;
  const std::string recorded =
      led.section("provenance").at("config_sha256").get<std::string>();
  if (recorded != ledger::sha256_hex(ledger::canonical_compact(config.document))) {
    throw Error("config differs from the one recorded in the ledger; one ledger "
                "covers one audited configuration");
  }
}

TrainedModel require_model(const fs::path& out, const LoadedDataset& data, uint64_t seed) {
  const fs::path path = out / kModelFile;
  if (!fs::exists(path)) {
    throw Error("model not found at " + path.string() + "; run the train command first");
  }
  const std::string text = read_file(path);
  const Json doc = parse_json_text(text, path.string());
  try {
    TrainedModel m = model_from_json(doc, data);
    if (doc.at("seed").get<uint64_t>() != seed) {
      throw Error("model was trained with seed " +
                  std::to_string(doc.at("seed").get<uint64_t>()) + ", not " +
                  std::to_string(seed) + "; rerun the train command");
    }
    return m;
  } catch (const JsonSchemaError& e) {
    throw Error(anchored_message(text, path.string(), e));
  }
}

void write(const fs::path& path, const std::string& text, std::ostream& out) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_file_atomic(path, text);
  out << "wrote " << path.string() << "\n";
}

int cmd_synth(const Flags& flags, std::ostream& out) {
  const auto config = require_config(flags);
  const uint64_t seed = resolve_seed(flags, config, std::nullopt);
  const SynthArtifacts a = run_synth(config, seed);
  write(fs::path(flags.out) / kDatasetFile, a.dataset_csv, out);
  write(fs::path(flags.out) / kGroundTruthFile, a.ground_truth_csv, out);
  return kExitOk;
}

int cmd_train(const Flags& flags, std::ostream& out) {
  const auto config = require_config(flags);
  const uint64_t seed = resolve_seed(flags, config, maybe_ledger(ledger_path(flags)));
  const LoadedDataset data = load_dataset(config, flags.out);
  const TrainedModel model = train_model(config, seed, data);
  write(fs::path(flags.out) / kModelFile, model_text(model.document), out);
  return kExitOk;
}

int cmd_audit(const Flags& flags, std::ostream& out) {
  const auto config = require_config(flags);
  const fs::path lpath = ledger_path(flags);
  auto existing = maybe_ledger(lpath);
  const uint64_t seed = resolve_seed(flags, config, existing);
  if (existing) check_config_matches(*existing, config);
  const LoadedDataset data = load_dataset(config, flags.out);
  const TrainedModel model = require_model(flags.out, data, seed);
  const std::string timestamp = now_timestamp();
  ledger::AuditLedger led =
      existing ? std::move(*existing)
               : ledger::AuditLedger(ledger::make_ledger_id(config.document, seed), seed,
                                     timestamp, config.operator_alias);
  const AuditSections s =
      run_audit(config, seed, data, model, ledger::sha256_hex(model_text(model.document)));
  std::vector<std::string> written;
  const std::pair<const char*, const Json*> sections[] = {
      {"provenance", &s.provenance}, {"guideline_tags", &s.guideline_tags},
      {"step1_scope", &s.step1},     {"step2_categories", &s.step2},
      {"step3_metrics", &s.step3},   {"step4_findings", &s.step4}};
  for (const auto& [key, content] : sections) {
    if (led.write_section(key, *content)) written.push_back(key);
  }
  if (!written.empty()) {
    led.record_history("audit", timestamp, written);
    save_ledger(led, lpath);
    out << "wrote " << lpath.string() << "\n";
  } else {
    out << "ledger already records this audit\n";
  }
  for (const auto& f : led.section("step4_findings").at("findings")) {
    out << f.at("metric").get<std::string>() << " " << f.at("group_a").get<std::string>()
        << " vs " << f.at("group_b").get<std::string>() << ": disparity "
        << format_percent(f.at("disparity").get<double>(), 1) << " (tolerance +/- "
        << format_percent(f.at("half_width").get<double>(), 1) << ")"
        << (f.at("exceeded").get<bool>() ? " EXCEEDED" : "") << "\n";
  }
  const bool exceeded = led.section("step4_findings").at("any_exceeded").get<bool>();
  return flags.fail_on_bias && exceeded ? kExitBiasFound : kExitOk;
}

int cmd_mitigate(const Flags& flags, std::ostream& out) {
  const auto config = require_config(flags);
  const fs::path lpath = ledger_path(flags);
  ledger::AuditLedger led = require_ledger(lpath);
  const uint64_t seed = resolve_seed(flags, config, led);
  check_config_matches(led, config);
  const LoadedDataset data = load_dataset(config, flags.out);
  const TrainedModel model = require_model(flags.out, data, seed);
  const PlanSections plan = run_mitigation(config, seed, data, model);
  for (const auto& [name, doc] : plan.model_files) {
    write(fs::path(flags.out) / name, doc.dump(2) + "\n", out);
  }
  write(fs::path(flags.out) / kInterventionsFile, plan.interventions_markdown, out);
  std::vector<std::string> written;
  if (led.write_section("step5_plan", plan.step5)) written.push_back("step5_plan");
  if (!led.has("step6_monitoring")) {
    led.write_section("step6_monitoring", plan.step6);
    written.push_back("step6_monitoring");
  } else {
    Json existing = led.section("step6_monitoring");
    existing["blind_spot_overrides"] = Json::array();
    if (ledger::canonicalize(plan.step6) != existing) {
      throw Error("ledger already records different step 6 monitoring notes");
    }
  }
  if (!written.empty()) {
    led.record_history("mitigate", now_timestamp(), written);
    save_ledger(led, lpath);
    out << "wrote " << lpath.string() << "\n";
  }
  out << "adopted: " << led.section("step5_plan").at("adopted").get<std::string>() << "\n";
  return kExitOk;
}

int cmd_explain(const Flags& flags, std::ostream& out) {
  const auto config = require_config(flags);
  const fs::path lpath = ledger_path(flags);
  ledger::AuditLedger led = require_ledger(lpath);
  const uint64_t seed = resolve_seed(flags, config, led);
  check_config_matches(led, config);
  std::vector<std::string> formats = {"csv", "svg"};
  if (!flags.format.empty()) {
    curves::parse_curve_format(flags.format);
    formats = {flags.format};
  }
  const LoadedDataset data = load_dataset(config, flags.out);
  const TrainedModel model = require_model(flags.out, data, seed);
  std::vector<std::string> features = config.explain.features;
  if (features.empty()) features = data.dataset.feature_names();
  const ExplainSections ex = run_explain(config, seed, data, model, features, formats);
  std::vector<std::string> written;
  for (const auto& run : ex.curves) {
    for (const auto& ext : formats) {
      const fs::path path =
          fs::path(flags.out) / (curve_file_stem(run.curve.feature) + "." + ext);
      fs::create_directories(path.parent_path());
      curves::export_curve(run.curve, curves::parse_curve_format(ext), path);
      out << "wrote " << path.string() << "\n";
    }
    if (led.append_explainability(run.entry)) {
      written.push_back("explainability_entries");
    }
  }
  if (!ex.blind_spot_overrides.empty()) {
    if (!led.has("step6_monitoring")) {
      throw Error("blind-spot overrides belong to step 6; run the mitigate command first");
    }
    if (led.append_blind_spot_overrides(ex.blind_spot_overrides)) {
      written.push_back("step6_monitoring");
    }
    for (const auto& b : ex.blind_spot_overrides) {
      out << "blind spots on " << b.at("feature").get<std::string>() << ": "
          << b.at("flagged").get<uint64_t>() << " of " << b.at("candidates").get<uint64_t>()
          << " high-intensity players not flagged\n";
    }
  }
  if (!written.empty()) {
    led.record_history("explain", now_timestamp(), written);
    save_ledger(led, lpath);
    out << "wrote " << lpath.string() << "\n";
  }
  return kExitOk;
}

int cmd_report(const Flags& flags, std::ostream& out, std::ostream& err) {
  const fs::path lpath = ledger_path(flags);
  const ledger::AuditLedger led = require_ledger(lpath);
  const std::string format = flags.format.empty() ? "md" : flags.format;
  if (format == "md") {
    write(fs::path(flags.out) / kReportFile, ledger::render_report(led), out);
  } else if (format == "json") {
    write(fs::path(flags.out) / "report.json", led.serialize(), out);
  } else {
    throw Error("report supports --format md or json, not '" + format + "'");
  }
  if (!flags.verify) return kExitOk;

  std::vector<std::string> issues;
  if (led.has("provenance")) {
    const Json& recorded = led.section("provenance").at("config");
    const fs::path base = flags.config.empty() ? fs::current_path()
                                               : fs::path(flags.config).parent_path();
    const ledger::AuditConfig config =
        ledger::parse_config(recorded.dump(2), "recorded config", base);
    issues = verify_ledger(led, config, flags.out);
  } else {
    for (const auto& t : led.tampered_sections()) {
      issues.push_back(t + ": content does not match its recorded hash");
    }
  }
  if (issues.empty()) {
    out << "verify: every recorded value reproduces from the ledger's config and seed\n";
    return kExitOk;
  }
  err << "verify: " << issues.size() << " mismatch(es)\n";
  for (const auto& i : issues) err << "  " << i << "\n";
  return kExitError;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Algorithmic bias audits, interventions and feature risk curves "
               "for tabular classifiers"};
  app.name("fairlens");
  app.require_subcommand(1);
  Flags flags;

  const auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", flags.config, "Audit configuration (JSON)");
    if (needs_config) c->required();
    sub->add_option("--out", flags.out, "Directory for generated files")
        ->capture_default_str();
    sub->add_option("--seed", flags.seed, "Master seed (else FAIRLENS_SEED, then config)");
  };
  auto* synth = app.add_subcommand("synth", "Generate the configured synthetic dataset");
  add_common(synth, true);
  auto* train = app.add_subcommand("train", "Train the audited model");
  add_common(train, true);
  train->add_option("--ledger", flags.ledger, "Ledger path (default: <out>/ledger.json)");
  auto* audit = app.add_subcommand("audit", "Steps 1-4: scope, categories, metrics, findings");
  add_common(audit, true);
  audit->add_option("--ledger", flags.ledger, "Ledger path (default: <out>/ledger.json)");
  audit->add_flag("--fail-on-bias", flags.fail_on_bias,
                  "Exit with status 2 when a disparity exceeds its tolerance");
  auto* mitigate = app.add_subcommand("mitigate", "Step 5: compare interventions");
  add_common(mitigate, true);
  mitigate->add_option("--ledger", flags.ledger, "Ledger path (default: <out>/ledger.json)");
  auto* explain = app.add_subcommand("explain", "Feature risk curves");
  add_common(explain, true);
  explain->add_option("--ledger", flags.ledger, "Ledger path (default: <out>/ledger.json)");
  explain->add_option("--format", flags.format, "Curve output: csv or svg (default both)")
      ->check(CLI::IsMember({"csv", "svg"}));
  auto* report = app.add_subcommand("report", "Render the ledger");
  add_common(report, false);
  report->add_option("--ledger", flags.ledger, "Ledger path (default: <out>/ledger.json)");
  report->add_option("--format", flags.format, "md (default) or json")
      ->check(CLI::IsMember({"md", "json"}));
  report->add_flag("--verify", flags.verify,
                   "Recompute every recorded value from the ledger's config and seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (synth->parsed()) return cmd_synth(flags, out);
    if (train->parsed()) return cmd_train(flags, out);
    if (audit->parsed()) return cmd_audit(flags, out);
    if (mitigate->parsed()) return cmd_mitigate(flags, out);
    if (explain->parsed()) return cmd_explain(flags, out);
    if (report->parsed()) return cmd_report(flags, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace fairlens::cli
