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

#include "fairlens/synth/generator.h"

#include <cmath>
#include <vector>

#include "fairlens/audit/bias_evaluation.h"
#include "fairlens/audit/group_metrics.h"
#include "fairlens/audit/indirect_identification.h"
#include "fairlens/core/cross_validation.h"
#include "fairlens/core/csv.h"
#include "fairlens/core/error.h"
#include "fairlens/core/random_forest.h"
#include "gtest/gtest.h"

namespace fairlens::synth {
namespace {

struct GroupStats {
  double share = 0;
  double outcome = 0;
};

std::vector<GroupStats> group_stats(const TabularDataset& d) {
  const auto& codes = d.groups().codes;
  std::vector<GroupStats> s(d.groups().categories.size());
  std::vector<double> n(s.size(), 0);
  for (size_t i = 0; i < d.rows(); ++i) {
    n[codes[i]] += 1;
    s[codes[i]].outcome += d.labels()[i];
  }
  for (size_t g = 0; g < s.size(); ++g) {
    s[g].share = n[g] / static_cast<double>(d.rows());
    s[g].outcome = n[g] > 0 ? s[g].outcome / n[g] : 0;
  }
  return s;
}

SynthConfig two_group_config(uint64_t seed) {
  SynthConfig c;
  c.n_rows = 4000;
  c.seed = seed;
  c.features = {{"a", Distribution::kUniform, -1, 1, 2.0},
                {"b", Distribution::kUniform, -1, 1, 1.5},
                {"c", Distribution::kUniform, -1, 1, 0.0}};
  c.groups = {{"F", 0.5, 0.0, {}, std::nullopt},
              {"M", 0.5, 0.0, {}, std::nullopt},
              {"U", 0.0, 0.0, {}, std::nullopt}};
  return c;
}

TEST(Presets, PublishedMarginals) {
  EXPECT_EQ(preset("operator2-like").n_rows, 18275u);
  const auto op1 = preset("operator1-like");
  EXPECT_EQ(op1.n_rows, 4340u);
  ASSERT_EQ(op1.groups.size(), 3u);
  EXPECT_EQ(*op1.groups[0].outcome_target, 0.204);
  EXPECT_EQ(*op1.groups[1].outcome_target, 0.244);
  EXPECT_EQ(*op1.groups[2].outcome_target, 0.168);
  const auto op2 = preset("operator2-like");
  EXPECT_EQ(op2.groups[0].proportion, 0.365);
  EXPECT_EQ(op2.groups[1].proportion, 0.104);
  EXPECT_EQ(op2.groups[2].proportion, 0.531);
  EXPECT_THROW(preset("operator3-like"), Error);
  for (const auto& name : preset_names()) EXPECT_NO_THROW(preset(name).validate());
}

TEST(Generate, OperatorTwoSharesAndOutcomes) {
  auto c = preset("operator2-like");
  c.seed = 11;
  const auto r = generate(c);
  EXPECT_EQ(r.dataset.rows(), 18275u);
  const auto stats = group_stats(r.dataset);
  for (size_t g = 0; g < 3; ++g) {
    EXPECT_NEAR(stats[g].share, c.groups[g].proportion, 0.02);
    EXPECT_NEAR(stats[g].outcome, *c.groups[g].outcome_target, 0.02);
  }
}

TEST(Generate, OperatorOneOutcomes) {
  auto c = preset("operator1-like");
  c.seed = 3;
  const auto stats = group_stats(generate(c).dataset);
  for (size_t g = 0; g < 3; ++g) {
    EXPECT_NEAR(stats[g].outcome, *c.groups[g].outcome_target, 0.02);
  }
}

TEST(Generate, SymmetricLogisticBaseRate) {
  auto c = two_group_config(5);
  c.n_rows = 10000;
  for (auto& f : c.features) f.weight = 0;
  const auto r = generate(c);
  EXPECT_NEAR(r.dataset.positives() / 10000.0, 0.5, 0.02);
}

TEST(Generate, DeterministicAndSeedSensitive) {
  const auto c = two_group_config(9);
  const auto a = generate(c);
  const auto b = generate(c);
  EXPECT_EQ(a.dataset, b.dataset);
  EXPECT_EQ(a.truth.true_probability, b.truth.true_probability);
  EXPECT_FALSE(generate(two_group_config(10)).dataset == a.dataset);
}

TEST(Generate, ValuesInsideSupports) {
  for (const auto& name : preset_names()) {
    auto c = preset(name);
    c.n_rows = 3000;
    const auto r = generate(c);
    for (size_t j = 0; j < c.features.size(); ++j) {
      const auto& f = c.features[j];
      for (const double v : r.dataset.column(j)) {
        ASSERT_TRUE(std::isfinite(v));
        switch (f.family) {
          case Distribution::kUniform:
            ASSERT_GE(v, f.a);
            ASSERT_LT(v, f.b);
            break;
          case Distribution::kLognormal:
            ASSERT_GT(v, 0.0);
            break;
          case Distribution::kBeta:
            ASSERT_GT(v, 0.0);
            ASSERT_LT(v, 1.0);
            break;
        }
      }
    }
    for (const double p : r.truth.true_probability) {
      ASSERT_GE(p, 0.0);
      ASSERT_LE(p, 1.0);
    }
  }
}

TEST(Generate, NoiseIsRecordedInGroundTruth) {
  auto c = two_group_config(2);
  c.groups[1].noise_rate = 0.2;
  const auto r = generate(c);
  double flips_m = 0, n_m = 0;
  for (size_t i = 0; i < r.dataset.rows(); ++i) {
    if (r.truth.groups[i] == 0) ASSERT_EQ(r.truth.noise_flipped[i], 0);
    if (r.truth.groups[i] == 1) {
      n_m += 1;
      flips_m += r.truth.noise_flipped[i];
    }
  }
  EXPECT_NEAR(flips_m / n_m, 0.2, 0.03);
  const std::string gt = ground_truth_to_csv(r, c);
  EXPECT_EQ(gt.substr(0, gt.find('\n')),
            "row,true_probability,gender,noise_flipped");
}

TEST(Generate, GroupNoiseFavoursCleanGroup) {
  // Noise on M only: the pooled model's TPR is lower for M.
  for (uint64_t seed = 0; seed < 3; ++seed) {
    auto c = two_group_config(seed);
    c.groups[1].noise_rate = 0.2;
    const auto d = generate(c).dataset;
    const auto split = stratified_split(d.labels(), 0.3, seed);
    const auto model = train_random_forest(d.subset(split.train), {}, seed);
    const auto table =
        audit::compute_group_metrics(model, d.subset(split.test), 0.5);
    EXPECT_GT(*table.value("F", Metric::kTpr), *table.value("M", Metric::kTpr))
        << "seed " << seed;
  }
}

TEST(Generate, CoefficientShiftIsAuditableButNotIdentifiable) {
  const ForestParams fast{.num_trees = 20};
  const std::vector<std::string> fm = {"F", "M"};
  int disparate = 0;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    auto c = two_group_config(100 + seed);
    c.n_rows = 10000;
    c.groups[1].coefficient_shift["a"] = 1.0;
    const auto d = generate(c).dataset;
    const auto split = stratified_split(d.labels(), 0.3, seed);
    const auto model = train_random_forest(d.subset(split.train), fast, seed);
    const auto table =
        audit::compute_group_metrics(model, d.subset(split.test), 0.5);
    disparate += audit::compute_disparity(table, Metric::kTpr, fm) > 0.02;
    if (seed < 3) {
      const auto ii = audit::indirect_identification_test(d, fast, seed);
      EXPECT_FALSE(ii.identifiable) << "seed " << seed;
    }
  }
  EXPECT_GE(disparate, 8);
}

TEST(SynthConfigJson, RoundTripAndOverrides) {
  const auto c = preset("operator2-like");
  const Json j = synth_config_to_json(c);
  auto back = synth_config_from_json(j, "/data/synth");
  back.seed = c.seed;
  EXPECT_EQ(back, c);
  const auto small = synth_config_from_json(
      Json{{"preset", "operator1-like"}, {"n_rows", 100}}, "");
  EXPECT_EQ(small.n_rows, 100u);
  EXPECT_EQ(small.groups, preset("operator1-like").groups);
  EXPECT_THROW(synth_config_from_json(Json{{"bogus", 1}}, ""), JsonSchemaError);
  EXPECT_THROW(synth_config_from_json(Json{{"preset", "nope"}}, ""),
               JsonSchemaError);
}

TEST(SynthConfig, Validation) {
  auto c = two_group_config(1);
  c.groups[0].proportion = 0.6;
  EXPECT_THROW(c.validate(), Error);
  c = two_group_config(1);
  c.groups[1].noise_rate = 0.5;
  EXPECT_THROW(c.validate(), Error);
  c = two_group_config(1);
  c.groups[1].coefficient_shift["zzz"] = 1.0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Generate, CsvSchemaRoundTrip) {
  auto c = two_group_config(4);
  c.n_rows = 50;
  const auto r = generate(c);
  const auto schema = c.schema();
  EXPECT_EQ(parse_dataset_csv(dataset_to_csv(r.dataset, schema), schema),
            r.dataset);
}

}  // namespace
}  // namespace fairlens::synth
