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

#include "fairlens/ledger/config.h"

#include <string>

#include "gtest/gtest.h"
#include "test_util.h"

namespace fairlens::ledger {
namespace {

constexpr const char* kMinimal = R"({
  "name": "minimal",
  "data": {"synth": {"preset": "operator1-like"}},
  "scope": {"model": "m", "justification": "j"},
  "categories": [{"name": "gender", "status": "analysed", "rationale": "r"}]
})";

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "cfg.json", ".");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, ShippedExampleParses) {
  const auto c = load_config(testing::config_dir() / "operator2_like.json");
  EXPECT_EQ(*c.seed, 20240601u);
  EXPECT_EQ(c.data.synth_preset, "operator2-like");
  ASSERT_TRUE(c.data.synth.has_value());
  EXPECT_EQ(c.data.synth->n_rows, 18275u);
  EXPECT_EQ(c.categories.size(), 3u);
  EXPECT_EQ(c.categories[1].status, "not-collected");
  EXPECT_EQ(c.audit.compare_groups, (std::vector<std::string>{"F", "M"}));
  ASSERT_TRUE(c.audit.benchmark.has_value());
  EXPECT_EQ(c.explain.blind_spot->feature, "stake_intensity");
  EXPECT_EQ(c.guidelines, (std::vector<std::string>{"G5", "G6", "G2"}));
}

TEST(Config, Defaults) {
  const auto c = parse_config(kMinimal, "cfg.json", ".");
  EXPECT_FALSE(c.seed.has_value());
  EXPECT_EQ(c.test_fraction, 0.3);
  EXPECT_EQ(c.audit.decision_threshold, 0.5);
  EXPECT_EQ(c.audit.half_width, 0.02);
  EXPECT_EQ(c.audit.cv_folds, 10u);
  EXPECT_EQ(c.audit.tolerance_source, audit::ThresholdProvenance::kConfigured);
  EXPECT_EQ(c.mitigation.max_accuracy_loss, 0.05);
  EXPECT_EQ(c.explain.n_points, 100u);
  EXPECT_EQ(c.guidelines, (std::vector<std::string>{"G5", "G6", "G2"}));
  EXPECT_EQ(c.model.num_trees, ForestParams{}.num_trees);
}

TEST(Config, UnknownFieldIsLineAnchored) {
  const std::string text = R"({
  "name": "x",
  "data": {"synth": {"preset": "operator1-like"}},
  "scope": {"model": "m", "justification": "j"},
  "categories": [{"name": "gender", "status": "analysed", "rationale": "r"}],
  "audit": {
    "decision_treshold": 0.4
  }
})";
  const std::string msg = error_of(text);
  EXPECT_NE(msg.find("cfg.json:7:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("/audit/decision_treshold"), std::string::npos) << msg;
}

TEST(Config, SyntaxErrorIsLineAnchored) {
  const std::string msg = error_of("{\n  \"name\": \"x\",\n  \"data\": {,\n}");
  EXPECT_NE(msg.find("cfg.json:3:"), std::string::npos) << msg;
}

TEST(Config, RejectsBadValues) {
  std::string bad_status = kMinimal;
  bad_status.replace(bad_status.find("\"analysed\""), 10, "\"skipped\"");
  EXPECT_NE(error_of(bad_status).find("/categories/0/status"), std::string::npos);

  const std::string bad_guideline = R"({
  "name": "x", "data": {"synth": {"preset": "null"}},
  "scope": {"model": "m", "justification": "j"},
  "categories": [{"name": "gender", "status": "analysed", "rationale": "r"}],
  "guidelines": ["G5", "G42"]
})";
  EXPECT_NE(error_of(bad_guideline).find("/guidelines/1"), std::string::npos);

  const std::string two_sources = R"({
  "name": "x", "data": {"synth": {"preset": "null"}, "csv": "a.csv"},
  "scope": {"model": "m", "justification": "j"},
  "categories": [{"name": "gender", "status": "analysed", "rationale": "r"}]
})";
  EXPECT_NE(error_of(two_sources).find("/data"), std::string::npos);
}

TEST(Config, CsvPathsResolveAgainstConfigDir) {
  const std::string text = R"({
  "name": "x",
  "data": {"csv": "players.csv", "label_column": "y", "group_column": "g",
           "categories": ["F", "M", "U"], "unspecified": "U"},
  "scope": {"model": "m", "justification": "j"},
  "categories": [{"name": "gender", "status": "analysed", "rationale": "r"}]
})";
  const auto c = parse_config(text, "cfg.json", "/data/audits");
  EXPECT_EQ(c.data.csv, std::filesystem::path("/data/audits/players.csv"));
  EXPECT_EQ(c.data.schema.label_column, "y");
  EXPECT_FALSE(c.data.synth.has_value());
}

}  // namespace
}  // namespace fairlens::ledger
