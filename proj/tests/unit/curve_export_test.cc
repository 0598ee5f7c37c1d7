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

#include "fairlens/curves/export.h"

#include <regex>
#include <set>
#include <string>

#include "fairlens/core/decision_tree.h"
#include "fairlens/core/error.h"
#include "fairlens/core/io.h"
#include "fairlens/core/random_forest.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairlens::curves {
namespace {

RiskCurve flat_curve() {
  const auto d = testing::random_dataset(60, 2, 1);
  const ConstantOracle oracle(0.25, d.feature_names());
  return feature_risk_curve(oracle, d, "x0");
}

TEST(CurveCsv, FlatCurve) {
  const std::string csv = curve_to_csv(flat_curve());
  const auto points = parse_curve_csv(csv);
  ASSERT_EQ(points.size(), 100u);
  for (const auto& p : points) EXPECT_EQ(p.mean_risk, 0.25);
  EXPECT_EQ(csv.substr(0, kCurveCsvHeader.size()), kCurveCsvHeader);
}

TEST(CurveCsv, RoundTrip) {
  const auto d = testing::random_dataset(200, 3, 2);
  const auto forest = train_random_forest(d, {.num_trees = 5}, 3);
  const auto curve = feature_risk_curve(forest, d, "x1", 50);
  const auto points = parse_curve_csv(curve_to_csv(curve));
  ASSERT_EQ(points.size(), curve.points.size());
  for (size_t k = 0; k < points.size(); ++k) {
    EXPECT_EQ(points[k].percentile, curve.points[k].percentile);
    EXPECT_NEAR(points[k].feature_value, curve.points[k].feature_value, 1e-9);
    EXPECT_NEAR(points[k].mean_risk, curve.points[k].mean_risk, 1e-9);
    EXPECT_NEAR(points[k].std_dev, curve.points[k].std_dev, 1e-9);
    EXPECT_NEAR(points[k].p10, curve.points[k].p10, 1e-9);
    EXPECT_NEAR(points[k].p90, curve.points[k].p90, 1e-9);
  }
}

TEST(CurveCsv, RejectsBadInput) {
  EXPECT_THROW(parse_curve_csv("a,b\n"), Error);
  EXPECT_THROW(parse_curve_csv(std::string(kCurveCsvHeader) + "\n1,2,x,4,5,6\n"),
               Error);
}

TEST(CurveSvg, StepCurveHasTwoLevels) {
  const auto d = testing::random_dataset(200, 2, 4);
  TreeNode root;
  root.feature = 0;
  root.threshold = 0.5;
  root.left = 1;
  root.right = 2;
  TreeNode low, high;
  high.value = 1.0;
  const DecisionTree tree({root, low, high},
                          {"decision_tree", d.feature_names(), 0.5});
  const std::string svg = curve_to_svg(feature_risk_curve(tree, d, "x0"));
  const std::regex mean_re("id=\"mean-line\" d=\"([^\"]*)\"");
  std::smatch m;
  ASSERT_TRUE(std::regex_search(svg, m, mean_re));
  const std::string path = m[1];
  const std::regex point_re("([0-9.]+) ([0-9.]+)");
  std::set<std::string> levels;
  for (auto it = std::sregex_iterator(path.begin(), path.end(), point_re);
       it != std::sregex_iterator(); ++it) {
    levels.insert((*it)[2]);
  }
  EXPECT_EQ(levels.size(), 2u);
  EXPECT_NE(svg.find("<title>Feature risk curve: x0</title>"), std::string::npos);
}

TEST(CurveExport, WritesFiles) {
  testing::TempDir dir;
  const auto curve = flat_curve();
  export_curve(curve, CurveFormat::kCsv, dir.path() / "c.csv");
  export_curve(curve, CurveFormat::kSvg, dir.path() / "c.svg");
  EXPECT_EQ(read_file(dir.path() / "c.csv"), curve_to_csv(curve));
  EXPECT_EQ(read_file(dir.path() / "c.svg"), curve_to_svg(curve));
  EXPECT_THROW(parse_curve_format("png"), Error);
}

}  // namespace
}  // namespace fairlens::curves
