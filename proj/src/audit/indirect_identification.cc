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

#include "fairlens/audit/indirect_identification.h"

#include "fairlens/core/cross_validation.h"
#include "fairlens/core/error.h"
#include "fairlens/core/rng.h"

namespace fairlens::audit {

IndirectIdentificationReport indirect_identification_test(
    const TabularDataset& dataset, const ForestParams& params, uint64_t seed,
    size_t k, double uplift_threshold) {
  const GroupColumn& column = dataset.groups();
  if (dataset.empty()) throw Error("empty dataset");

  std::vector<size_t> support(column.categories.size(), 0);
  for (const GroupCode c : column.codes) ++support[c];
  std::vector<GroupCode> present;
  for (size_t c = 0; c < support.size(); ++c) {
    if (support[c] > 0) present.push_back(static_cast<GroupCode>(c));
  }
  if (present.size() < 2) {
    throw Error("attribute '" + column.name +
                "' has a single category; nothing to identify");
  }

  IndirectIdentificationReport report;
  report.attribute = column.name;
  report.uplift_threshold = uplift_threshold;
  report.folds = k;
  GroupCode majority = present.front();
  for (const GroupCode c : present) {
    report.categories.push_back(column.categories.name(c));
    if (support[c] > support[majority]) majority = c;
  }
  report.majority_category = column.categories.name(majority);
  const double n = static_cast<double>(dataset.rows());
  report.baseline = static_cast<double>(support[majority]) / n;

  std::vector<uint32_t> classes(column.codes.begin(), column.codes.end());
  const uint64_t base_seed = derive_seed(seed, "indirect-identification");
  const Folds folds = stratified_folds_by_class(classes, k, base_seed);

  // best[i]: highest one-vs-rest score seen for row i and its category.
  std::vector<double> best(dataset.rows(), -1.0);
  std::vector<GroupCode> predicted(dataset.rows(), present.front());
  for (size_t ci = 0; ci < present.size(); ++ci) {
    const GroupCode c = present[ci];
    std::vector<uint8_t> member(dataset.rows());
    for (size_t i = 0; i < dataset.rows(); ++i) {
      member[i] = column.codes[i] == c ? 1 : 0;
    }
    const TabularDataset target = dataset.with_labels(std::move(member));
    const std::vector<double> scores =
        out_of_fold_scores(target, folds, params, derive_seed(base_seed, c));
    for (size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] > best[i]) {  // ties keep the lower category code
        best[i] = scores[i];
        predicted[i] = c;
      }
    }
  }
  size_t correct = 0;
  for (size_t i = 0; i < dataset.rows(); ++i) {
    correct += predicted[i] == column.codes[i];
  }
  report.accuracy = static_cast<double>(correct) / n;
  report.uplift = report.accuracy - report.baseline;
  report.identifiable = report.uplift > uplift_threshold;
  return report;
}

}  // namespace fairlens::audit
