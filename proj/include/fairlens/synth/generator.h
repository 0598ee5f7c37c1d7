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

#ifndef FAIRLENS_SYNTH_GENERATOR_H_
#define FAIRLENS_SYNTH_GENERATOR_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairlens/core/csv.h"
#include "fairlens/core/dataset.h"
#include "fairlens/core/json_util.h"

namespace fairlens::synth {

enum class Distribution { kUniform, kLognormal, kBeta };

std::string_view distribution_name(Distribution d);
Distribution parse_distribution(std::string_view name);

// Parameters by family: uniform (lo, hi), lognormal (mu, sigma) of the
// underlying normal, beta (alpha, beta).
struct FeatureSpec {
  std::string name;
  Distribution family = Distribution::kUniform;
  double a = 0.0;
  double b = 1.0;
  double weight = 0.0;  // logistic coefficient on the standardised feature

  bool operator==(const FeatureSpec&) const = default;
};

struct GroupSpec {
  std::string name;
  double proportion = 0.0;
  double noise_rate = 0.0;  // probability a drawn label is flipped
  std::map<std::string, double> coefficient_shift;  // added to the weight
  // When set, this group's intercept is solved so the expected outcome rate
  // (after noise) over its generated rows equals the target.
  std::optional<double> outcome_target;

  bool operator==(const GroupSpec&) const = default;
};

struct SynthConfig {
  size_t n_rows = 1000;
  std::vector<FeatureSpec> features;
  std::vector<GroupSpec> groups;
  std::string unspecified = "U";
  std::string group_column = "gender";
  std::string label_column = "self_excluded";
  double intercept = 0.0;
  uint64_t seed = 0;

  void validate() const;
  CsvSchema schema() const;
  bool operator==(const SynthConfig&) const = default;
};

struct GroundTruth {
  std::vector<double> true_probability;  // logistic probability before noise
  std::vector<GroupCode> groups;
  std::vector<uint8_t> noise_flipped;
  std::vector<double> group_intercepts;
};

struct SynthResult {
  TabularDataset dataset;
  GroundTruth truth;
};

// Logit for a row of group g:
//   intercept_g + sum_j (weight_j + shift_{g,j}) * z_j
// where z_j standardises feature j (log scale for lognormal features). Labels
// are Bernoulli draws from the logistic, then flipped with the group's noise
// rate. Groups are allotted by exact quota and shuffled, independently of the
// features.
SynthResult generate(const SynthConfig& config);

// Named scenarios. "operator1-like" and "operator2-like" copy the group
// balance and outcome rates of the two published operators (the second with
// a planted bias against M); "null" has no group effects at all.
SynthConfig preset(std::string_view name);
std::vector<std::string> preset_names();

std::string ground_truth_to_csv(const SynthResult& result,
                                const SynthConfig& config);

Json synth_config_to_json(const SynthConfig& config);
// Starts from the named "preset" (if any) and overrides the fields given.
SynthConfig synth_config_from_json(const Json& value, const std::string& pointer);

}  // namespace fairlens::synth

#endif  // FAIRLENS_SYNTH_GENERATOR_H_
