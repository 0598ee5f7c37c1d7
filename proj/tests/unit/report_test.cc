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

#include "fairlens/ledger/report.h"

#include <string>

#include "fairlens/core/io.h"
#include "fairlens/ledger/guidelines.h"
#include "fairlens/ledger/ledger.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace fairlens::ledger {
namespace {

size_t count(const std::string& text, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

class ReportTest : public testing::PipelineFixture {};

TEST(GroupValueRow, TableTwoFormatting) {
  const Json groups = Json::array({{{"group", "F"}, {"tpr", 0.537}},
                                   {{"group", "M"}, {"tpr", 0.465}},
                                   {{"group", "U"}, {"tpr", 0.529}}});
  EXPECT_EQ(group_value_row(groups, "tpr"), "F: 53.7% M: 46.5% U: 52.9%");
  const Json undefined = Json::array({{{"group", "F"}, {"tpr", nullptr}}});
  EXPECT_EQ(group_value_row(undefined, "tpr"), "F: n/a");
}

TEST(Report, EmptyLedgerHasSixPendingSteps) {
  const AuditLedger ledger("0123456789abcdef", 3, "2026-01-01T00:00:00Z");
  const std::string md = render_report(ledger);
  for (int s = 0; s < 6; ++s) {
    const std::string h = "## Step " + std::to_string(s + 1) + ": " +
                          std::string(kStepTitles[s]);
    EXPECT_EQ(count(md, h), 1u) << h;
  }
  // Six steps plus guidelines and explainability sections.
  EXPECT_EQ(count(md, "_Pending: not yet recorded._"), 8u);
  const size_t step4 = md.find("## Step 4");
  EXPECT_NE(md.find("_Pending", step4), std::string::npos);
  EXPECT_EQ(md.find("2026-01-01"), std::string::npos);
}

TEST_F(ReportTest, DeterministicBytes) {
  const AuditLedger ledger = load_ledger(ledger_path());
  EXPECT_EQ(render_report(ledger), render_report(ledger));
  EXPECT_EQ(render_report(load_ledger(ledger_path())),
            read_file(dir() / "report.md"));
}

TEST_F(ReportTest, NotCollectedCategoryIsListed) {
  const std::string md = render_report(load_ledger(ledger_path()));
  EXPECT_NE(md.find("| ethnicity | not-collected | Never recorded by the operator |"),
            std::string::npos);
}

TEST_F(ReportTest, GuidelineTagsUseTableText) {
  const std::string md = render_report(load_ledger(ledger_path()));
  for (const char* id : {"G5", "G6", "G2"}) {
    EXPECT_NE(md.find(find_guideline(id).text), std::string::npos) << id;
  }
  EXPECT_NE(md.find("Avoid creating or re-enforcing unfair biases"),
            std::string::npos);
}

TEST_F(ReportTest, FindingsRowsUsePercentages) {
  Json doc = load_ledger(ledger_path()).doc();
  for (auto& g : doc["step4_findings"]["group_metrics"]["groups"]) {
    if (g["group"] == "F") g["tpr"] = 0.537;
    if (g["group"] == "M") g["tpr"] = 0.465;
  }
  const std::string md = render_report(AuditLedger::from_json(doc));
  EXPECT_NE(md.find("| TPR | F: 53.7% M: 46.5% U: "), std::string::npos);
  for (int s = 0; s < 6; ++s) {
    EXPECT_EQ(count(md, "## Step " + std::to_string(s + 1) + ":"), 1u);
  }
  EXPECT_EQ(count(md, "_Pending"), 0u);
}

}  // namespace
}  // namespace fairlens::ledger
