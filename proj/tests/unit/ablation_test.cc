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

#include <cmath>
#include <vector>

#include "fairlens/audit/bias_evaluation.h"
#include "fairlens/core/error.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairlens::audit {
namespace {

const ForestParams kFast{.num_trees = 15, .tree = {.min_leaf = 5}};

TabularDataset with_duplicate_of_x0(const TabularDataset& d) {
  std::vector<double> values;
  for (size_t i = 0; i < d.rows(); ++i) {
    for (size_t j = 0; j < d.features(); ++j) values.push_back(d.at(i, j));
    values.push_back(d.at(i, 0));
  }
  auto names = d.feature_names();
  names.push_back("x0_copy");
  return TabularDataset(names, values, d.labels(), d.groups());
}

void expect_deltas_within(const AblationResult& r, double half_width) {
  for (const auto& delta : r.deltas) {
    ASSERT_TRUE(delta.accuracy.has_value());
    EXPECT_LE(std::fabs(*delta.accuracy), half_width) << delta.group;
  }
}

TEST(Ablation, NoiseFeatureIsHarmless) {
  const auto d = testing::separable_dataset(900, 3, 2);
  const auto r = feature_ablation_delta(d, "x2", kFast, 1, 5);
  const double hw =
      derive_tolerance_from_cv(r.folds_with, Metric::kAccuracy).half_width;
  expect_deltas_within(r, hw);
}

TEST(Ablation, OnlyInformativeFeatureDropsToChance) {
  const auto d = testing::separable_dataset(900, 3, 3);
  const auto r = feature_ablation_delta(d, "x0", kFast, 1, 5);
  EXPECT_GE(*r.with_feature.overall.accuracy(), 0.95);
  EXPECT_NEAR(*r.without_feature.overall.accuracy(), 0.5, 0.08);
  for (const auto& delta : r.deltas) EXPECT_LT(*delta.accuracy, -0.3);
}

TEST(Ablation, RedundantCopyIsHarmless) {
  const auto d = with_duplicate_of_x0(testing::separable_dataset(900, 2, 4));
  const auto r = feature_ablation_delta(d, "x0_copy", kFast, 1, 5);
  const double hw =
      derive_tolerance_from_cv(r.folds_with, Metric::kAccuracy).half_width;
  expect_deltas_within(r, hw);
}

TEST(Ablation, DeltaIsWithoutMinusWith) {
  const auto d = testing::random_dataset(300, 3, 5);
  const auto r = feature_ablation_delta(d, "x1", kFast, 2, 3);
  for (size_t g = 0; g < r.deltas.size(); ++g) {
    EXPECT_EQ(*r.deltas[g].tpr, *r.without_feature.groups[g].tpr() -
                                    *r.with_feature.groups[g].tpr());
  }
}

TEST(Ablation, Errors) {
  const auto d = testing::random_dataset(100, 1, 5);
  EXPECT_THROW(feature_ablation_delta(d, "x0", kFast, 1, 3), Error);
  EXPECT_THROW(feature_ablation_delta(d, "nope", kFast, 1, 3), Error);
}

}  // namespace
}  // namespace fairlens::audit
