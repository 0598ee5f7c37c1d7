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

#ifndef FAIRLENS_CURVES_RISK_CURVE_H_
#define FAIRLENS_CURVES_RISK_CURVE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fairlens/core/dataset.h"
#include "fairlens/core/oracle.h"

namespace fairlens::curves {

inline constexpr size_t kDefaultCurvePoints = 100;

struct GridPoint {
  size_t percentile = 0;  // 1..n_points
  double value = 0.0;

  bool operator==(const GridPoint&) const = default;
};

// Nearest-rank value of `sorted` at `level` in (0, 1]: the element of rank
// ceil(level * n).
double nearest_rank(std::span<const double> sorted, double level);

// Nearest-rank percentiles at levels k / n_points for k = 1..n_points.
// Repeated values are kept, so the grid always has n_points entries.
std::vector<GridPoint> compute_percentile_grid(std::span<const double> values,
                                               size_t n_points);

struct CurvePoint {
  size_t percentile = 0;
  double feature_value = 0.0;
  double mean_risk = 0.0;
  double std_dev = 0.0;  // population standard deviation of the scores
  double p10 = 0.0;      // nearest-rank 10th percentile of the scores
  double p90 = 0.0;

  bool operator==(const CurvePoint&) const = default;
};

struct RiskCurve {
  std::string feature;
  std::vector<CurvePoint> points;
  size_t eval_set_size = 0;
  bool balanced = false;
  OracleInfo oracle;

  bool operator==(const RiskCurve& o) const {
    return feature == o.feature && points == o.points &&
           eval_set_size == o.eval_set_size && balanced == o.balanced &&
           oracle.kind == o.oracle.kind &&
           oracle.feature_names == o.oracle.feature_names &&
           oracle.threshold == o.oracle.threshold;
  }
};

// Global, feature-specific explanation: for each percentile value v of
// `feature` over the evaluation set, set that feature to v in every row,
// query the oracle row by row and summarise the scores. The evaluation set
// itself is never modified.
RiskCurve feature_risk_curve(const PredictionOracle& oracle,
                             const TabularDataset& eval_set,
                             const std::string& feature,
                             size_t n_points = kDefaultCurvePoints,
                             bool balanced = false);

// Row indices of a label-balanced subsample: the majority label class is
// uniformly undersampled to the minority count. Ascending order.
std::vector<size_t> balanced_indices(std::span<const uint8_t> labels,
                                     uint64_t seed);
TabularDataset balance_eval_set(const TabularDataset& dataset, uint64_t seed);

// Rows whose `feature` is at or above its intensity_percentile value
// (nearest rank), regardless of score.
std::vector<size_t> intensity_candidates(const TabularDataset& dataset,
                                         const std::string& feature,
                                         double intensity_percentile);

// Intensity candidates the model scores below `threshold`: heavy activity the
// model does not flag, to be monitored by hand.
std::vector<size_t> flag_blind_spot_players(const TabularDataset& dataset,
                                            const PredictionOracle& oracle,
                                            const std::string& feature,
                                            double intensity_percentile,
                                            double threshold);

}  // namespace fairlens::curves

#endif  // FAIRLENS_CURVES_RISK_CURVE_H_
