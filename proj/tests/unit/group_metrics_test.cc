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

#include "fairlens/audit/group_metrics.h"

#include <vector>

#include "fairlens/core/error.h"
#include "fairlens/core/oracle.h"
#include "fairlens/core/rng.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairlens::audit {
namespace {

// Scores equal to the label.
class PerfectOracle : public PredictionOracle {
 public:
  explicit PerfectOracle(std::vector<std::string> names)
      : info_{"perfect", std::move(names), 0.5} {}
  double score(std::span<const double>) const override { return 0.0; }
  std::vector<double> score_dataset(const TabularDataset& d) const override {
    return {d.labels().begin(), d.labels().end()};
  }
  const OracleInfo& info() const override { return info_; }

 private:
  OracleInfo info_;
};

TEST(GroupMetrics, PerfectClassifier) {
  const auto d = testing::random_dataset(300, 2, 3);
  const PerfectOracle oracle(d.feature_names());
  const auto table = compute_group_metrics(oracle, d, 0.5);
  ASSERT_EQ(table.groups.size(), 3u);
  for (const auto& g : table.groups) {
    EXPECT_EQ(*g.tpr(), 1.0);
    EXPECT_EQ(*g.tnr(), 1.0);
    EXPECT_EQ(*g.accuracy(), 1.0);
  }
}

TEST(GroupMetrics, HandCountedGroup) {
  // Group F: TP=3 FN=1 TN=5 FP=1.
  const std::vector<double> scores = {1, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1};
  const std::vector<uint8_t> labels = {1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 1};
  std::vector<std::string> groups(10, "F");
  groups.push_back("M");
  const auto d = testing::make_dataset({"x"}, std::vector<double>(11, 0.0),
                                       labels, groups);
  const auto table = group_metrics_from_scores(scores, d, 0.5);
  const auto& f = table.find("F");
  EXPECT_EQ(f.counts, (ConfusionCounts{.tp = 3, .fp = 1, .tn = 5, .fn = 1}));
  EXPECT_DOUBLE_EQ(*f.tpr(), 0.75);
  EXPECT_NEAR(*f.tnr(), 0.8333333333, 1e-9);
  EXPECT_DOUBLE_EQ(*f.accuracy(), 0.8);
  // M has a single positive and no negatives.
  EXPECT_FALSE(table.find("M").tnr().has_value());
  EXPECT_EQ(table.overall.support(), 11u);
}

TEST(GroupMetrics, SupportWeightedAccuracyMatchesPooled) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const auto d = testing::random_dataset(200 + seed * 7, 1, seed);
    Rng rng(seed + 1000);
    std::vector<double> scores(d.rows());
    for (double& s : scores) s = rng.uniform();
    const auto table = group_metrics_from_scores(scores, d, 0.5);
    double weighted = 0;
    uint64_t support = 0;
    for (const auto& g : table.groups) {
      if (g.support() == 0) continue;
      weighted += *g.accuracy() * static_cast<double>(g.support());
      support += g.support();
    }
    ASSERT_EQ(support, d.rows());
    EXPECT_NEAR(weighted / static_cast<double>(support),
                *table.overall.accuracy(), 1e-12);
  }
}

TEST(GroupMetrics, RequiresGroupColumn) {
  const auto d = testing::make_dataset({"x"}, {0.0}, {1});
  const std::vector<double> scores = {1.0};
  EXPECT_THROW(group_metrics_from_scores(scores, d, 0.5), Error);
}

}  // namespace
}  // namespace fairlens::audit
