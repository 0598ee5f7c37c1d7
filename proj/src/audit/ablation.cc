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

#include "fairlens/audit/ablation.h"

#include "fairlens/core/error.h"
#include "fairlens/core/rng.h"

namespace fairlens::audit {
namespace {

std::optional<double> diff(std::optional<double> without,
                           std::optional<double> with) {
  if (!without || !with) return std::nullopt;
  return *without - *with;
}

}  // namespace

AblationResult feature_ablation_delta(const TabularDataset& dataset,
                                      const std::string& feature,
                                      const ForestParams& params,
                                      uint64_t seed, size_t k,
                                      double threshold) {
  dataset.groups();  // throws without a group attribute
  dataset.feature_index(feature);
  if (dataset.features() < 2) {
    throw Error("cannot ablate '" + feature + "': it is the only feature");
  }
  const TabularDataset reduced = dataset.without_feature(feature);
  const uint64_t base = derive_seed(seed, "ablation");
  const Folds folds = stratified_folds(dataset.labels(), k, base);

  const auto with_scores = out_of_fold_scores(dataset, folds, params, base);
  const auto without_scores = out_of_fold_scores(reduced, folds, params, base);

  AblationResult r;
  r.feature = feature;
  r.folds = k;
  r.with_feature = group_metrics_from_scores(with_scores, dataset, threshold);
  r.without_feature =
      group_metrics_from_scores(without_scores, reduced, threshold);
  r.folds_with = fold_metrics(with_scores, dataset.labels(), folds, threshold);
  r.folds_without =
      fold_metrics(without_scores, dataset.labels(), folds, threshold);
  for (size_t g = 0; g < r.with_feature.groups.size(); ++g) {
    const GroupMetrics& a = r.with_feature.groups[g];
    const GroupMetrics& b = r.without_feature.groups[g];
    r.deltas.push_back({a.group, diff(b.tpr(), a.tpr()),
                        diff(b.tnr(), a.tnr()),
                        diff(b.accuracy(), a.accuracy())});
  }
  return r;
}

}  // namespace fairlens::audit
