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

#ifndef FAIRLENS_CLI_PIPELINE_H_
#define FAIRLENS_CLI_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fairlens/core/cross_validation.h"
#include "fairlens/core/dataset.h"
#include "fairlens/core/json_util.h"
#include "fairlens/core/random_forest.h"
#include "fairlens/curves/risk_curve.h"
#include "fairlens/ledger/config.h"
#include "fairlens/ledger/ledger.h"
#include "fairlens/synth/generator.h"

// The audit pipeline as pure functions of (config, seed, dataset, model).
// The CLI commands write their results to disk and to the ledger; verification
// reruns the same functions and compares.
namespace fairlens::cli {

inline constexpr uint64_t kDefaultSeed = 0;
inline constexpr const char* kDatasetFile = "dataset.csv";
inline constexpr const char* kGroundTruthFile = "ground_truth.csv";
inline constexpr const char* kModelFile = "model.json";
inline constexpr const char* kLedgerFile = "ledger.json";
inline constexpr const char* kInterventionsFile = "interventions.md";
inline constexpr const char* kReportFile = "report.md";
inline constexpr std::string_view kModelFormat = "fairlens.model/1";

struct LoadedDataset {
  TabularDataset dataset;
  std::string sha256;   // of the CSV bytes
  std::string path;     // as recorded in the ledger
  std::string source;   // "synthetic:<preset>" or "csv"
};

struct TrainedModel {
  RandomForest forest;
  TrainTestSplit split;
  std::string dataset_sha256;
  Json document;  // model.json contents
};

// Synthetic dataset and its ground-truth sidecar, as CSV text.
struct SynthArtifacts {
  std::string dataset_csv;
  std::string ground_truth_csv;
};
SynthArtifacts run_synth(const ledger::AuditConfig& config, uint64_t seed);

LoadedDataset load_dataset(const ledger::AuditConfig& config,
                           const std::filesystem::path& out_dir);
// Parses CSV text with the configured schema.
LoadedDataset dataset_from_text(const ledger::AuditConfig& config,
                                const std::string& text, std::string path);

TrainedModel train_model(const ledger::AuditConfig& config, uint64_t seed,
                         const LoadedDataset& data);
// Bytes of model.json.
std::string model_text(const Json& document);
// Checks the model was trained on this dataset.
TrainedModel model_from_json(const Json& document, const LoadedDataset& data);

// Sections written by `audit` (steps 1-4 plus provenance and tags).
struct AuditSections {
  Json provenance;
  Json guideline_tags;
  Json step1;
  Json step2;
  Json step3;
  Json step4;
  bool any_exceeded = false;
};
AuditSections run_audit(const ledger::AuditConfig& config, uint64_t seed,
                        const LoadedDataset& data, const TrainedModel& model,
                        const std::string& model_sha256);

struct PlanSections {
  Json step5;
  Json step6;
  std::string interventions_markdown;
  std::vector<std::pair<std::string, Json>> model_files;  // name, contents
};
PlanSections run_mitigation(const ledger::AuditConfig& config, uint64_t seed,
                            const LoadedDataset& data, const TrainedModel& model);

struct CurveRun {
  curves::RiskCurve curve;
  Json entry;  // explainability ledger entry
};
struct ExplainSections {
  std::vector<CurveRun> curves;
  Json blind_spot_overrides = Json::array();
};
// `artifact_formats` lists the file extensions written per curve ("csv",
// "svg"); they are named in each entry.
ExplainSections run_explain(const ledger::AuditConfig& config, uint64_t seed,
                            const LoadedDataset& data, const TrainedModel& model,
                            const std::vector<std::string>& features,
                            const std::vector<std::string>& artifact_formats);

std::string curve_file_stem(const std::string& feature);

// Recomputes every recorded section from the ledger's config and seed and
// lists differences beyond 1e-9 (plus hash mismatches and provenance drift).
std::vector<std::string> verify_ledger(const ledger::AuditLedger& ledger,
                                       const ledger::AuditConfig& config,
                                       const std::filesystem::path& out_dir);

}  // namespace fairlens::cli

#endif  // FAIRLENS_CLI_PIPELINE_H_
