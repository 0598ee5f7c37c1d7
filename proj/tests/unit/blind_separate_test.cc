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

#include "fairlens/mitigation/blind_separate.h"

#include <vector>

#include "fairlens/core/error.h"
#include "fairlens/core/rng.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairlens::mitigation {
namespace {

const ForestParams kFast{.num_trees = 10, .tree = {.min_leaf = 5}};

RandomForest constant_forest(double value) {
  OracleInfo info{"random_forest", {"x0", "x1"}, 0.5};
  TreeNode leaf;
  leaf.value = value;
  leaf.count = 1;
  return RandomForest({DecisionTree({leaf}, info)}, {.num_trees = 1}, 0, info);
}

BlindSeparateEnsemble constant_ensemble(const std::vector<double>& values) {
  std::vector<EnsembleMember> members;
  const char* names[] = {"F", "M", "U"};
  for (size_t i = 0; i < values.size(); ++i) {
    members.push_back({names[i], {}, 100, i, constant_forest(values[i])});
  }
  return BlindSeparateEnsemble(std::move(members), {}, 50);
}

TEST(BlindSeparate, MaxAggregation) {
  const std::vector<double> x = {0.1, 0.2};
  EXPECT_EQ(predict_max_risk(constant_ensemble({0.2, 0.7, 0.4}), x), 0.7);
  EXPECT_EQ(predict_max_risk(constant_ensemble({0.5, 0.5, 0.5}), x), 0.5);
}

TEST(BlindSeparate, ThreeMembersForThreeCategories) {
  const auto d = testing::random_dataset(600, 2, 1);
  const auto e = train_blind_separate(d, kFast, 3, 50);
  ASSERT_EQ(e.members().size(), 3u);
  EXPECT_EQ(e.members()[0].group, "F");
  EXPECT_EQ(e.members()[2].group, "U");
  EXPECT_TRUE(e.excluded().empty());
  uint64_t rows = 0;
  for (const auto& m : e.members()) rows += m.rows;
  EXPECT_EQ(rows, d.rows());
}

TEST(BlindSeparate, SingleCategoryReducesToMember) {
  auto d = testing::random_dataset(300, 2, 2);
  GroupColumn column = d.groups();
  std::fill(column.codes.begin(), column.codes.end(), GroupCode{1});
  d = d.with_groups(column);
  const auto e = train_blind_separate(d, kFast, 3, 50);
  ASSERT_EQ(e.members().size(), 1u);
  for (size_t i = 0; i < d.rows(); ++i) {
    EXPECT_EQ(e.score(d.row(i)), e.members()[0].model.score(d.row(i)));
  }
}

TEST(BlindSeparate, UndersizedGroupMergesIntoUnspecified) {
  auto d = testing::random_dataset(400, 2, 4);
  GroupColumn column = d.groups();
  for (size_t i = 0; i < column.codes.size(); ++i) {
    column.codes[i] = i < 2 ? 1 : (i % 2 == 0 ? 0 : 2);
  }
  d = d.with_groups(column);
  const auto e = train_blind_separate(d, kFast, 3, 50);
  ASSERT_EQ(e.members().size(), 2u);
  const auto& u = e.members()[1];
  EXPECT_EQ(u.group, "U");
  EXPECT_EQ(u.merged_groups, std::vector<std::string>{"M"});
  EXPECT_EQ(u.rows, 201u);
  const Json j = ensemble_to_json(e);
  EXPECT_EQ(j["members"][1]["merged_groups"][0], "M");
}

TEST(BlindSeparate, DominanceAndMonotoneAlerting) {
  const auto d = testing::random_dataset(900, 3, 5);
  const auto e = train_blind_separate(d, kFast, 7, 50);
  Rng rng(1);
  std::vector<size_t> member_alerts(e.members().size(), 0);
  size_t ensemble_alerts = 0;
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> x(3);
    for (double& v : x) v = rng.uniform();
    const double s = e.score(x);
    ensemble_alerts += s >= 0.5;
    for (size_t m = 0; m < e.members().size(); ++m) {
      const double ms = e.members()[m].model.score(x);
      ASSERT_GE(s, ms);
      member_alerts[m] += ms >= 0.5;
    }
  }
  for (const size_t a : member_alerts) EXPECT_GE(ensemble_alerts, a);
}

TEST(BlindSeparate, BlindToGroupColumn) {
  const auto d = testing::random_dataset(600, 3, 6);
  const auto e = train_blind_separate(d, kFast, 2, 50);
  const auto before = e.score_dataset(d);
  GroupColumn column = d.groups();
  Rng rng(3);
  rng.shuffle(std::span<GroupCode>(column.codes));
  EXPECT_EQ(e.score_dataset(d.with_groups(column)), before);
  EXPECT_EQ(e.score_dataset(d.with_groups(std::nullopt)), before);
}

TEST(BlindSeparate, JsonRoundTrip) {
  const auto d = testing::random_dataset(300, 2, 7);
  const auto e = train_blind_separate(d, kFast, 2, 50);
  const auto back = ensemble_from_json(ensemble_to_json(e), "");
  EXPECT_EQ(back.score_dataset(d), e.score_dataset(d));
  EXPECT_EQ(ensemble_to_json(back), ensemble_to_json(e));
}

TEST(BlindSeparate, NothingLargeEnough) {
  const auto d = testing::random_dataset(30, 2, 8);
  EXPECT_THROW(train_blind_separate(d, kFast, 2, 50), Error);
}

}  // namespace
}  // namespace fairlens::mitigation
