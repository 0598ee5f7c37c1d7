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

#ifndef FAIRLENS_LEDGER_CONFIG_H_
#define FAIRLENS_LEDGER_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairlens/audit/bias_evaluation.h"
#include "fairlens/core/csv.h"
#include "fairlens/core/error.h"
#include "fairlens/core/json_util.h"
#include "fairlens/core/metrics.h"
#include "fairlens/core/random_forest.h"
#include "fairlens/synth/generator.h"

namespace fairlens::ledger {

// Malformed configuration; the message starts with "<file>:<line>:".
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct DataConfig {
  // Exactly one source: a synthetic generator or a CSV file.
  std::optional<synth::SynthConfig> synth;
  std::string synth_preset;  // empty for a fully custom generator
  std::filesystem::path csv;  // resolved against the config directory
  CsvSchema schema;
};

struct ScopeConfig {
  std::string model;
  std::string justification;
  std::vector<std::string> excluded;
};

struct CategoryConfig {
  std::string name;
  std::string status;  // analysed | not-collected | deferred
  std::string rationale;
};

struct BenchmarkConfig {
  std::string name;
  std::vector<std::string> groups;
  std::vector<double> proportions;
};

struct AuditSectionConfig {
  double decision_threshold = 0.5;
  std::vector<Metric> metrics = {Metric::kTpr, Metric::kTnr};
  audit::ThresholdProvenance tolerance_source = audit::ThresholdProvenance::kConfigured;
  double half_width = 0.02;
  size_t cv_folds = 10;
  std::vector<std::string> compare_groups;  // empty: every category but unspecified
  bool indirect_identification = true;
  size_t indirect_folds = 5;
  double uplift_threshold = 0.05;
  std::optional<BenchmarkConfig> benchmark;
  std::vector<std::string> ablation_features;
  size_t ablation_folds = 5;
};

struct MitigationConfig {
  Metric priority_metric = Metric::kTpr;
  std::vector<std::string> methods = {"attribute-reinstatement", "blind-separate"};
  size_t min_group_support = 50;
  double max_accuracy_loss = 0.05;
};

struct BlindSpotConfig {
  std::string feature;
  double intensity_percentile = 0.95;
  double threshold = 0.5;
};

struct ExplainConfig {
  std::string scope = "Global view of how each feature moves predicted risk";
  std::vector<std::string> features;
  size_t n_points = 100;
  bool balanced = true;
  std::string discussion = "To be reviewed with domain experts";
  std::string plan = "No change planned";
  std::string monitoring = "Re-run after each retraining";
  std::optional<BlindSpotConfig> blind_spot;
};

struct MonitoringConfig {
  std::vector<std::string> limitations;
  std::vector<std::string> follow_up;
};

struct AuditConfig {
  std::string name;
  std::optional<std::string> operator_alias;
  std::optional<uint64_t> seed;
  DataConfig data;
  ForestParams model;
  double test_fraction = 0.3;
  ScopeConfig scope;
  std::vector<CategoryConfig> categories;
  AuditSectionConfig audit;
  MitigationConfig mitigation;
  ExplainConfig explain;
  std::vector<std::string> guidelines = {"G5", "G6", "G2"};
  MonitoringConfig monitoring;

  Json document;  // the parsed document, recorded in ledger provenance
};

inline constexpr std::string_view kMethodAttribute = "attribute-reinstatement";
inline constexpr std::string_view kMethodBlindSeparate = "blind-separate";

// `source` names the document in error messages; relative CSV paths are
// resolved against `base_dir`.
AuditConfig parse_config(std::string_view text, const std::string& source,
                         const std::filesystem::path& base_dir);
AuditConfig load_config(const std::filesystem::path& path);

}  // namespace fairlens::ledger

#endif  // FAIRLENS_LEDGER_CONFIG_H_
