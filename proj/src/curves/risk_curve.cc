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

#include "fairlens/curves/risk_curve.h"

#include <algorithm>
#include <cmath>

#include "fairlens/core/error.h"
#include "fairlens/core/rng.h"
#include "fairlens/simd/kernels.h"

namespace fairlens::curves {

double nearest_rank(std::span<const double> sorted, double level) {
  if (sorted.empty()) throw Error("no values to rank");
  if (!(level > 0.0 && level <= 1.0)) throw Error("rank level must be in (0, 1]");
  const double n = static_cast<double>(sorted.size());
  // The epsilon keeps 0.99 * 1000 from rounding up past 990.
  auto rank = static_cast<size_t>(std::ceil(level * n - 1e-9));
  rank = std::clamp<size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

std::vector<GridPoint> compute_percentile_grid(std::span<const double> values,
                                               size_t n_points) {
  if (values.empty()) throw Error("cannot build a percentile grid from no values");
  if (n_points < 2) throw Error("a percentile grid needs at least 2 points");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  std::vector<GridPoint> grid;
  grid.reserve(n_points);
  for (size_t k = 1; k <= n_points; ++k) {
    // ceil(k * n / n_points) in integers.
    const size_t rank = (k * n + n_points - 1) / n_points;
    grid.push_back({k, sorted[std::max<size_t>(rank, 1) - 1]});
  }
  return grid;
}

RiskCurve feature_risk_curve(const PredictionOracle& oracle,
                             const TabularDataset& eval_set,
                             const std::string& feature, size_t n_points,
                             bool balanced) {
  if (eval_set.empty()) throw Error("evaluation set is empty");
  const size_t col = eval_set.feature_index(feature);
  if (std::find(oracle.info().feature_names.begin(),
                oracle.info().feature_names.end(),
                feature) == oracle.info().feature_names.end()) {
    throw Error("model does not use feature '" + feature + "'");
  }
  const std::vector<double> column = eval_set.column(col);
  const auto grid = compute_percentile_grid(column, n_points);

  RiskCurve curve;
  curve.feature = feature;
  curve.eval_set_size = eval_set.rows();
  curve.balanced = balanced;
  curve.oracle = oracle.info();
  const double n = static_cast<double>(eval_set.rows());
  for (const GridPoint& g : grid) {
    const TabularDataset swept = eval_set.with_feature_value(col, g.value);
    std::vector<double> scores = oracle.score_dataset(swept);
    CurvePoint p;
    p.percentile = g.percentile;
    p.feature_value = g.value;
    p.mean_risk = simd::sum(scores) / n;
    p.std_dev = std::sqrt(simd::sum_sq_dev(scores, p.mean_risk) / n);
    std::sort(scores.begin(), scores.end());
    p.p10 = nearest_rank(scores, 0.10);
    p.p90 = nearest_rank(scores, 0.90);
    curve.points.push_back(p);
  }
  return curve;
}

std::vector<size_t> balanced_indices(std::span<const uint8_t> labels,
                                     uint64_t seed) {
  std::vector<size_t> pos;
  std::vector<size_t> neg;
  for (size_t i = 0; i < labels.size(); ++i) {
    (labels[i] ? pos : neg).push_back(i);
  }
  if (pos.empty() || neg.empty()) {
    throw Error("balancing needs at least one positive and one negative row");
  }
  std::vector<size_t>& majority = pos.size() > neg.size() ? pos : neg;
  const size_t keep = std::min(pos.size(), neg.size());
  Rng rng(derive_seed(seed, "balance-eval-set"));
  rng.shuffle(std::span<size_t>(majority));
  majority.resize(keep);
  std::vector<size_t> out = pos;
  out.insert(out.end(), neg.begin(), neg.end());
  std::sort(out.begin(), out.end());
  return out;
}

TabularDataset balance_eval_set(const TabularDataset& dataset, uint64_t seed) {
  return dataset.subset(balanced_indices(dataset.labels(), seed));
}

std::vector<size_t> intensity_candidates(const TabularDataset& dataset,
                                         const std::string& feature,
                                         double intensity_percentile) {
  if (!(intensity_percentile > 0.0 && intensity_percentile < 1.0)) {
    throw Error("intensity percentile must lie in (0, 1)");
  }
  if (dataset.empty()) throw Error("dataset is empty");
  const size_t col = dataset.feature_index(feature);
  std::vector<double> sorted = dataset.column(col);
  std::sort(sorted.begin(), sorted.end());
  const double cutoff = nearest_rank(sorted, intensity_percentile);
  std::vector<size_t> out;
  for (size_t i = 0; i < dataset.rows(); ++i) {
    if (dataset.at(i, col) >= cutoff) out.push_back(i);
  }
  return out;
}

std::vector<size_t> flag_blind_spot_players(const TabularDataset& dataset,
                                            const PredictionOracle& oracle,
                                            const std::string& feature,
                                            double intensity_percentile,
                                            double threshold) {
  const auto candidates =
      intensity_candidates(dataset, feature, intensity_percentile);
  const std::vector<double> scores = oracle.score_dataset(dataset);
  std::vector<size_t> out;
  for (const size_t i : candidates) {
    if (scores[i] < threshold) out.push_back(i);
  }
  return out;
}

}  // namespace fairlens::curves
