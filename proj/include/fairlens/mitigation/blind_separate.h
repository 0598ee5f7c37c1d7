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

#ifndef FAIRLENS_MITIGATION_BLIND_SEPARATE_H_
#define FAIRLENS_MITIGATION_BLIND_SEPARATE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fairlens/core/dataset.h"
#include "fairlens/core/json_util.h"
#include "fairlens/core/oracle.h"
#include "fairlens/core/random_forest.h"

namespace fairlens::mitigation {

inline constexpr size_t kDefaultMinGroupSupport = 50;

struct EnsembleMember {
  std::string group;
  std::vector<std::string> merged_groups;  // undersized categories folded in
  uint64_t rows = 0;
  uint64_t seed = 0;
  RandomForest model;
};

// A category whose rows could not back any member: it was undersized and the
// unspecified pool it merged into stayed below the minimum as well.
struct ExcludedGroup {
  std::string group;
  uint64_t rows = 0;
};

// One model per group, each trained only on that group's rows. A query runs
// through every member and takes the highest score, so prediction never
// needs (or reads) the group of the row being scored.
class BlindSeparateEnsemble : public PredictionOracle {
 public:
  BlindSeparateEnsemble(std::vector<EnsembleMember> members,
                        std::vector<ExcludedGroup> excluded,
                        size_t min_group_support);

  double score(std::span<const double> features) const override;
  void score_batch(const MatrixView& rows, std::span<double> out) const override;
  const OracleInfo& info() const override { return info_; }

  const std::vector<EnsembleMember>& members() const { return members_; }
  const std::vector<ExcludedGroup>& excluded() const { return excluded_; }
  size_t min_group_support() const { return min_group_support_; }

 private:
  std::vector<EnsembleMember> members_;
  std::vector<ExcludedGroup> excluded_;
  size_t min_group_support_;
  OracleInfo info_;
};

// Categories with fewer than min_group_support rows are merged into the
// unspecified category's member.
BlindSeparateEnsemble train_blind_separate(
    const TabularDataset& dataset, const ForestParams& params, uint64_t seed,
    size_t min_group_support = kDefaultMinGroupSupport);

// Max of the member scores.
double predict_max_risk(const BlindSeparateEnsemble& ensemble,
                        std::span<const double> features);

Json ensemble_to_json(const BlindSeparateEnsemble& ensemble);
BlindSeparateEnsemble ensemble_from_json(const Json& value,
                                         const std::string& pointer);

}  // namespace fairlens::mitigation

#endif  // FAIRLENS_MITIGATION_BLIND_SEPARATE_H_
