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

#include "fairlens/mitigation/attribute_model.h"

#include <vector>

#include "fairlens/core/error.h"
#include "fairlens/core/metrics.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairlens::mitigation {
namespace {

const ForestParams kFast{.num_trees = 10, .tree = {.min_leaf = 5}};

// Label is 1 exactly for group F; features carry no signal.
TabularDataset group_only_signal(uint64_t seed) {
  auto d = testing::random_dataset(600, 3, seed);
  GroupColumn column = d.groups();
  std::vector<uint8_t> labels(d.rows());
  for (size_t i = 0; i < d.rows(); ++i) {
    column.codes[i] = static_cast<GroupCode>(i % 2);
    labels[i] = column.codes[i] == 0;
  }
  return d.with_groups(column).with_labels(labels);
}

double accuracy(const std::vector<double>& scores, const TabularDataset& d) {
  return *count_confusion(scores, d.labels(), 0.5).accuracy();
}

TEST(AttributeModel, GroupOnlySignal) {
  const auto train = group_only_signal(1);
  const auto test = group_only_signal(2);
  const auto aware = train_with_attribute(train, kFast, 3);
  EXPECT_GE(accuracy(aware.score_dataset(test), test), 0.99);
  const auto blind = train_random_forest(train, kFast, 3);
  EXPECT_NEAR(accuracy(blind.score_dataset(test), test), 0.5, 0.08);
}

TEST(AttributeModel, OneHotEncoding) {
  const auto d = testing::random_dataset(50, 2, 4);
  const auto e = one_hot_encode_groups(d);
  ASSERT_EQ(e.features(), 5u);
  EXPECT_EQ(e.feature_names()[2], indicator_name("gender", "F"));
  for (size_t i = 0; i < e.rows(); ++i) {
    double sum = 0;
    for (size_t k = 2; k < 5; ++k) sum += e.at(i, k);
    EXPECT_EQ(sum, 1.0);
    EXPECT_EQ(e.at(i, 2 + d.groups().codes[i]), 1.0);
  }
}

TEST(AttributeModel, RejectsIncompleteIndicators) {
  const auto d = testing::random_dataset(200, 2, 5);
  const auto model = train_with_attribute(d, kFast, 1);
  const std::vector<double> none = {0.5, 0.5, 0.0, 0.0, 0.0};
  const std::vector<double> two = {0.5, 0.5, 1.0, 1.0, 0.0};
  const std::vector<double> one = {0.5, 0.5, 0.0, 1.0, 0.0};
  EXPECT_THROW(model.score(none), Error);
  EXPECT_THROW(model.score(two), Error);
  EXPECT_NO_THROW(model.score(one));
}

TEST(AttributeModel, DeterministicAndSerializable) {
  const auto d = testing::random_dataset(300, 2, 6);
  const auto a = train_with_attribute(d, kFast, 9);
  const auto b = train_with_attribute(d, kFast, 9);
  EXPECT_EQ(a.score_dataset(d), b.score_dataset(d));
  const auto back = attribute_model_from_json(attribute_model_to_json(a), "");
  EXPECT_EQ(back.score_dataset(d), a.score_dataset(d));
}

}  // namespace
}  // namespace fairlens::mitigation
