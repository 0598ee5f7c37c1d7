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

#ifndef FAIRLENS_CORE_ORACLE_H_
#define FAIRLENS_CORE_ORACLE_H_

#include <span>
#include <string>
#include <vector>

#include "fairlens/core/dataset.h"

namespace fairlens {

struct OracleInfo {
  std::string kind;
  std::vector<std::string> feature_names;
  double threshold = 0.5;
};

// Query interface over any trained binary classifier. Implementations are
// immutable after construction: every method is const and safe to call from
// several threads at once.
class PredictionOracle {
 public:
  virtual ~PredictionOracle() = default;

  // Probability of the positive class, in [0, 1].
  virtual double score(std::span<const double> features) const = 0;

  // Scores every row of `rows` into `out` (size rows.rows).
  virtual void score_batch(const MatrixView& rows, std::span<double> out) const;

  // Scores a dataset whose feature columns match info().feature_names.
  // Models that consume more than the feature matrix (for example a group
  // encoding) override this.
  virtual std::vector<double> score_dataset(const TabularDataset& dataset) const;

  int classify(std::span<const double> features, double threshold) const {
    return score(features) >= threshold ? 1 : 0;
  }
  int classify(std::span<const double> features) const {
    return classify(features, info().threshold);
  }

  virtual const OracleInfo& info() const = 0;
};

// Throws unless the dataset columns are exactly the oracle's features.
void check_feature_names(const PredictionOracle& oracle,
                         const TabularDataset& dataset);

// A fixed score, handy as a reference oracle.
class ConstantOracle : public PredictionOracle {
 public:
  ConstantOracle(double value, std::vector<std::string> feature_names);
  double score(std::span<const double>) const override { return value_; }
  const OracleInfo& info() const override { return info_; }

 private:
  double value_;
  OracleInfo info_;
};

}  // namespace fairlens

#endif  // FAIRLENS_CORE_ORACLE_H_
