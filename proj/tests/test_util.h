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

#ifndef FAIRLENS_TESTS_TEST_UTIL_H_
#define FAIRLENS_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fairlens/core/dataset.h"
#include "fairlens/core/rng.h"
#include "gtest/gtest.h"

namespace fairlens::testing {

// Groups are given by name; `categories` must include "U".
TabularDataset make_dataset(std::vector<std::string> features,
                            std::vector<double> values,
                            std::vector<uint8_t> labels,
                            const std::vector<std::string>& groups = {},
                            std::vector<std::string> categories = {"F", "M",
                                                                   "U"});

// n rows of uniform [0,1) noise features, random labels and groups.
TabularDataset random_dataset(size_t n, size_t features, uint64_t seed,
                              double positive_rate = 0.5);

// label = 1 iff x0 > 0.5; other features are noise.
TabularDataset separable_dataset(size_t n, size_t features, uint64_t seed);

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::filesystem::path config_dir();

// A scaled-down audit configuration over a synthetic preset, quick enough
// for unit tests.
std::string small_config_text(const std::string& preset, size_t n_rows,
                              uint64_t seed);

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args);

// synth, train, audit, mitigate, explain and report into `dir`; returns the
// first failing step or the report step.
CliResult run_pipeline(const std::filesystem::path& config,
                       const std::filesystem::path& dir);

// Runs the small pipeline once per test binary and keeps the directory.
class PipelineFixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite();
  static void TearDownTestSuite();

  static const std::filesystem::path& dir() { return dir_->path(); }
  static std::filesystem::path config_path() { return dir() / "config.json"; }
  static std::filesystem::path ledger_path() { return dir() / "ledger.json"; }

 private:
  static TempDir* dir_;
};

}  // namespace fairlens::testing

#endif  // FAIRLENS_TESTS_TEST_UTIL_H_
