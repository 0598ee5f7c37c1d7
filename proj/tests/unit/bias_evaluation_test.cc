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

#include "fairlens/audit/bias_evaluation.h"

#include <string>
#include <vector>

#include "fairlens/core/error.h"
#include "fairlens/core/rng.h"
#include "gtest/gtest.h"

namespace fairlens::audit {
namespace {

// TPR of each group is tp / 1000 exactly as a double.
GroupMetricsTable tpr_table(const std::vector<std::pair<std::string, int>>& tp) {
  std::vector<std::pair<std::string, ConfusionCounts>> counts;
  for (const auto& [g, n] : tp) {
    counts.push_back({g, ConfusionCounts{.tp = static_cast<uint64_t>(n),
                                         .fp = 10,
                                         .tn = 90,
                                         .fn = static_cast<uint64_t>(1000 - n)}});
  }
  return group_metrics_from_counts(counts);
}

const std::vector<std::string> kFM = {"F", "M"};

FoldMetrics fold_with_tpr(double tpr) {
  FoldMetrics f;
  f.tpr = tpr;
  f.tnr = 0.9;
  f.accuracy = 0.8;
  return f;
}

TEST(Disparity, OperatorTwoBaseline) {
  const auto t = tpr_table({{"F", 537}, {"M", 465}, {"U", 529}});
  EXPECT_NEAR(compute_disparity(t, Metric::kTpr, kFM), 0.072, 1e-12);
}

TEST(Disparity, OperatorOneSubsetIgnoresU) {
  const auto t = tpr_table({{"F", 670}, {"M", 653}, {"U", 665}});
  EXPECT_NEAR(compute_disparity(t, Metric::kTpr, kFM), 0.017, 1e-12);
}

TEST(Disparity, SymmetricAndZeroOnTies) {
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const int a = static_cast<int>(rng.uniform_index(1001));
    const int b = static_cast<int>(rng.uniform_index(1001));
    const int c = static_cast<int>(rng.uniform_index(1001));
    const auto t1 = tpr_table({{"F", a}, {"M", b}, {"U", c}});
    const auto t2 = tpr_table({{"F", c}, {"M", a}, {"U", b}});
    const std::vector<std::string> all = {"F", "M", "U"};
    const std::vector<std::string> reversed = {"U", "M", "F"};
    EXPECT_EQ(compute_disparity(t1, Metric::kTpr, all),
              compute_disparity(t2, Metric::kTpr, reversed));
  }
  const auto same = tpr_table({{"F", 500}, {"M", 500}});
  EXPECT_EQ(compute_disparity(same, Metric::kTpr, kFM), 0.0);
}

TEST(Disparity, NeedsTwoDefinedGroups) {
  const auto t = group_metrics_from_counts(
      {{"F", ConfusionCounts{.tp = 1, .fn = 1}},
       {"M", ConfusionCounts{.fp = 1, .tn = 1}}});
  EXPECT_THROW(compute_disparity(t, Metric::kTpr, kFM), Error);
}

TEST(Tolerance, PaperBandFromFolds) {
  const std::vector<FoldMetrics> folds = {
      fold_with_tpr(0.64), fold_with_tpr(0.66), fold_with_tpr(0.68)};
  const auto t = derive_tolerance_from_cv(folds, Metric::kTpr);
  EXPECT_EQ(t.half_width, 0.02);
  EXPECT_EQ(t.provenance, ThresholdProvenance::kDerivedFromCv);
}

TEST(Tolerance, FloorAndArithmetic) {
  const std::vector<FoldMetrics> same = {fold_with_tpr(0.7), fold_with_tpr(0.7)};
  EXPECT_EQ(derive_tolerance_from_cv(same, Metric::kTpr).half_width,
            kMinimumDerivedHalfWidth);
  const std::vector<FoldMetrics> two = {fold_with_tpr(0.5), fold_with_tpr(0.6)};
  EXPECT_EQ(derive_tolerance_from_cv(two, Metric::kTpr).half_width, 0.05);
}

TEST(Tolerance, UndefinedFoldsAreSkipped) {
  FoldMetrics empty;
  const std::vector<FoldMetrics> folds = {empty, fold_with_tpr(0.5),
                                          fold_with_tpr(0.6)};
  EXPECT_EQ(derive_tolerance_from_cv(folds, Metric::kTpr).half_width, 0.05);
  const std::vector<FoldMetrics> none = {empty, empty};
  EXPECT_THROW(derive_tolerance_from_cv(none, Metric::kTpr), Error);
}

TEST(EvaluateBias, OperatorTwoExceedsFavouringF) {
  const auto t = tpr_table({{"F", 537}, {"M", 465}});
  const std::vector<ToleranceThreshold> th = {
      configured_tolerance(Metric::kTpr, 0.02)};
  const auto findings = evaluate_bias(t, th, kFM);
  ASSERT_EQ(findings.size(), 1u);
  EXPECT_TRUE(findings[0].exceeded);
  EXPECT_EQ(findings[0].favoured, "F");
  EXPECT_TRUE(any_exceeded(findings));
}

TEST(EvaluateBias, OperatorOneWithinTolerance) {
  const auto t = tpr_table({{"F", 670}, {"M", 653}});
  const std::vector<ToleranceThreshold> th = {
      configured_tolerance(Metric::kTpr, 0.02)};
  EXPECT_FALSE(evaluate_bias(t, th, kFM)[0].exceeded);
}

TEST(EvaluateBias, BoundaryIsNotExceeded) {
  const auto t = tpr_table({{"F", 500}, {"M", 750}});
  const std::vector<ToleranceThreshold> th = {
      configured_tolerance(Metric::kTpr, 0.25)};
  const auto f = evaluate_bias(t, th, kFM);
  EXPECT_EQ(f[0].disparity, 0.25);
  EXPECT_FALSE(f[0].exceeded);
  EXPECT_EQ(f[0].favoured, "M");
}

TEST(EvaluateBias, MonotoneInHalfWidth) {
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    const auto t = tpr_table({{"F", static_cast<int>(rng.uniform_index(1001))},
                              {"M", static_cast<int>(rng.uniform_index(1001))},
                              {"U", static_cast<int>(rng.uniform_index(1001))}});
    const std::vector<std::string> all = {"F", "M", "U"};
    const double w1 = rng.uniform(0.001, 0.5);
    const double w2 = w1 + rng.uniform(0.0, 0.5);
    const std::vector<ToleranceThreshold> a = {
        configured_tolerance(Metric::kTpr, w1)};
    const std::vector<ToleranceThreshold> b = {
        configured_tolerance(Metric::kTpr, w2)};
    const auto fa = evaluate_bias(t, a, all);
    const auto fb = evaluate_bias(t, b, all);
    ASSERT_EQ(fa.size(), fb.size());
    for (size_t i = 0; i < fa.size(); ++i) {
      if (!fa[i].exceeded) EXPECT_FALSE(fb[i].exceeded);
    }
  }
}

TEST(EvaluateBias, RejectsNonPositiveHalfWidth) {
  EXPECT_THROW(configured_tolerance(Metric::kTpr, 0.0), Error);
}

}  // namespace
}  // namespace fairlens::audit
