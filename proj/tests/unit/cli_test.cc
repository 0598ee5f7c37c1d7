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

#include "fairlens/cli/cli.h"

#include <filesystem>
#include <string>

#include "fairlens/core/io.h"
#include "fairlens/ledger/ledger.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairlens::cli {
namespace {

namespace fs = std::filesystem;
using testing::run;

class CliTest : public testing::PipelineFixture {
 protected:
  // A private copy of the finished run for tests that modify files.
  static void copy_run(const fs::path& to) {
    fs::copy(dir(), to, fs::copy_options::recursive);
  }
};

TEST_F(CliTest, PipelineWritesArtifacts) {
  for (const char* f : {"dataset.csv", "ground_truth.csv", "model.json",
                        "ledger.json", "report.md", "interventions.md",
                        "attribute_model.json", "blind_separate.json",
                        "curve_night_play_share.csv",
                        "curve_night_play_share.svg"}) {
    EXPECT_TRUE(fs::exists(dir() / f)) << f;
  }
  const auto ledger = ledger::load_ledger(ledger_path());
  EXPECT_EQ(ledger.seed(), 7u);
  EXPECT_EQ(ledger.doc()["explainability_entries"].size(), 1u);
  EXPECT_TRUE(ledger.tampered_sections().empty());
}

TEST_F(CliTest, VerifyPassesOnUntouchedLedger) {
  const auto r = run({"report", "--config", config_path().string(), "--out",
                      dir().string(), "--verify"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST_F(CliTest, VerifyFlagsHandEditedFinding) {
  testing::TempDir tmp;
  const fs::path copy = tmp.path() / "run";
  copy_run(copy);
  Json doc = Json::parse(read_file(copy / "ledger.json"));
  doc["step4_findings"]["findings"][0]["value_a"] = 0.999;
  write_file_atomic(copy / "ledger.json", doc.dump(2) + "\n");
  const auto r = run({"report", "--config", (copy / "config.json").string(),
                      "--out", copy.string(), "--verify"});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("step4_findings"), std::string::npos) << r.err;
}

TEST_F(CliTest, FailOnBiasTracksFindingsAndAppendsKeepEarlierSteps) {
  testing::TempDir tmp;
  const std::string c = config_path().string();
  const std::string o = tmp.path().string();
  ASSERT_EQ(run({"synth", "--config", c, "--out", o}).code, 0);
  ASSERT_EQ(run({"train", "--config", c, "--out", o}).code, 0);
  const auto audit = run({"audit", "--config", c, "--out", o, "--fail-on-bias"});
  const auto after_audit = ledger::load_ledger(tmp.path() / "ledger.json");
  const bool exceeded =
      after_audit.section("step4_findings").at("any_exceeded").get<bool>();
  EXPECT_EQ(audit.code, exceeded ? kExitBiasFound : kExitOk) << audit.err;
  EXPECT_TRUE(exceeded);

  ASSERT_EQ(run({"mitigate", "--config", c, "--out", o}).code, 0);
  const auto after_mitigate = ledger::load_ledger(tmp.path() / "ledger.json");
  for (int s = 0; s < 4; ++s) {
    EXPECT_EQ(after_mitigate.section(ledger::kStepKeys[s]),
              after_audit.section(ledger::kStepKeys[s]));
  }
  ASSERT_EQ(run({"explain", "--config", c, "--out", o, "--format", "csv"}).code, 0);
  const auto after_explain = ledger::load_ledger(tmp.path() / "ledger.json");
  for (int s = 0; s < 5; ++s) {
    EXPECT_EQ(after_explain.section(ledger::kStepKeys[s]),
              after_mitigate.section(ledger::kStepKeys[s]));
  }
  Json step6 = after_explain.section("step6_monitoring");
  step6["blind_spot_overrides"] = Json::array();
  EXPECT_EQ(step6, after_mitigate.section("step6_monitoring"));
  EXPECT_TRUE(after_explain.tampered_sections().empty());
  EXPECT_FALSE(fs::exists(tmp.path() / "curve_night_play_share.svg"));

  // Re-running a step with the same inputs leaves the ledger content as is.
  ASSERT_EQ(run({"audit", "--config", c, "--out", o}).code, 0);
  EXPECT_EQ(ledger::load_ledger(tmp.path() / "ledger.json").section("step4_findings"),
            after_audit.section("step4_findings"));
}

TEST_F(CliTest, SeedMismatchIsAnError) {
  testing::TempDir tmp;
  const fs::path copy = tmp.path() / "run";
  copy_run(copy);
  const auto r = run({"audit", "--config", (copy / "config.json").string(),
                      "--out", copy.string(), "--seed", "8"});
  EXPECT_EQ(r.code, kExitError);
}

TEST_F(CliTest, ReportJson) {
  const auto r = run({"report", "--out", dir().string(), "--format", "json"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST(Cli, MalformedConfigExitsOneWithLine) {
  testing::TempDir tmp;
  const fs::path cfg = tmp.path() / "bad.json";
  write_file_atomic(cfg, "{\n  \"name\": \"x\",\n  \"seed\": \"abc\"\n}\n");
  const auto r = run({"synth", "--config", cfg.string(), "--out",
                      tmp.path().string()});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("bad.json:3:"), std::string::npos) << r.err;
}

TEST(Cli, MissingLedgerForAppendCommands) {
  testing::TempDir tmp;
  const fs::path cfg = tmp.path() / "c.json";
  write_file_atomic(cfg, testing::small_config_text("operator1-like", 500, 1));
  for (const char* cmd : {"mitigate", "explain"}) {
    const auto r = run({cmd, "--config", cfg.string(), "--out",
                        tmp.path().string()});
    EXPECT_EQ(r.code, kExitError) << cmd;
    EXPECT_FALSE(r.err.empty());
  }
  EXPECT_EQ(run({"report", "--out", tmp.path().string()}).code, kExitError);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitError);
  EXPECT_EQ(run({"dance"}).code, kExitError);
  EXPECT_EQ(run({"synth"}).code, kExitError);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, SeedPrecedence) {
  testing::TempDir tmp;
  const fs::path cfg = tmp.path() / "c.json";
  write_file_atomic(cfg, testing::small_config_text("operator1-like", 300, 1));
  ASSERT_EQ(run({"synth", "--config", cfg.string(), "--out",
                 (tmp.path() / "a").string()}).code, 0);
  ASSERT_EQ(run({"synth", "--config", cfg.string(), "--out",
                 (tmp.path() / "b").string(), "--seed", "1"}).code, 0);
  ASSERT_EQ(run({"synth", "--config", cfg.string(), "--out",
                 (tmp.path() / "c").string(), "--seed", "2"}).code, 0);
  const auto a = read_file(tmp.path() / "a" / "dataset.csv");
  EXPECT_EQ(a, read_file(tmp.path() / "b" / "dataset.csv"));
  EXPECT_NE(a, read_file(tmp.path() / "c" / "dataset.csv"));
}

}  // namespace
}  // namespace fairlens::cli
