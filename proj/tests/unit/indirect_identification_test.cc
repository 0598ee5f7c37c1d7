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

#include <algorithm>
#include <cmath>
#include <vector>

#include "fairlens/core/error.h"
#include "fairlens/core/rng.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairlens::audit {
namespace {

const ForestParams kFast{.num_trees = 15};

TEST(IndirectIdentification, RecoverableAttributeIsIdentifiable) {
  const auto base = testing::random_dataset(800, 3, 5);
  std::vector<double> x0 = base.column(0);
  std::vector<double> sorted = x0;
  std::nth_element(sorted.begin(), sorted.begin() + 400, sorted.end());
  const double median = sorted[400];
  GroupColumn column{"gender", CategorySet({"F", "M", "U"}, "U"), {}};
  for (const double v : x0) column.codes.push_back(v > median ? 0 : 1);
  const auto d = base.with_groups(column);
  const auto r = indirect_identification_test(d, kFast, 1);
  EXPECT_GE(r.uplift, 0.3);
  EXPECT_TRUE(r.identifiable);
  EXPECT_EQ(r.categories, (std::vector<std::string>{"F", "M"}));
  EXPECT_NEAR(r.baseline, 0.5, 0.01);
}

TEST(IndirectIdentification, IndependentAttributeIsNot) {
  const auto d = testing::random_dataset(900, 3, 6);
  const auto r = indirect_identification_test(d, kFast, 2);
  EXPECT_LE(std::fabs(r.uplift), 0.05);
  EXPECT_FALSE(r.identifiable);
  EXPECT_NEAR(r.uplift, r.accuracy - r.baseline, 1e-15);
}

TEST(IndirectIdentification, SingleCategoryIsAnError) {
  auto d = testing::random_dataset(50, 2, 1);
  GroupColumn column = d.groups();
  std::fill(column.codes.begin(), column.codes.end(), GroupCode{0});
  EXPECT_THROW(indirect_identification_test(d.with_groups(column), kFast, 0),
               Error);
}

TEST(IndirectIdentification, Deterministic) {
  const auto d = testing::random_dataset(300, 2, 8);
  EXPECT_EQ(indirect_identification_test(d, kFast, 3),
            indirect_identification_test(d, kFast, 3));
}

}  // namespace
}  // namespace fairlens::audit
