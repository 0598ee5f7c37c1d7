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

#include "fairlens/core/oracle.h"

#include "fairlens/core/error.h"

namespace fairlens {

void PredictionOracle::score_batch(const MatrixView& rows,
                                   std::span<double> out) const {
  for (size_t i = 0; i < rows.rows; ++i) out[i] = score(rows.row(i));
}

std::vector<double> PredictionOracle::score_dataset(
    const TabularDataset& dataset) const {
  check_feature_names(*this, dataset);
  std::vector<double> out(dataset.rows());
  score_batch(dataset.matrix(), out);
  return out;
}

void check_feature_names(const PredictionOracle& oracle,
                         const TabularDataset& dataset) {
  if (oracle.info().feature_names != dataset.feature_names()) {
    throw Error("dataset features do not match the features the " +
                oracle.info().kind + " model expects");
  }
}

ConstantOracle::ConstantOracle(double value,
                               std::vector<std::string> feature_names)
    : value_(value), info_{"constant", std::move(feature_names), 0.5} {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error("constant score must lie in [0, 1]");
  }
}

}  // namespace fairlens
