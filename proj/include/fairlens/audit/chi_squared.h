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

#ifndef FAIRLENS_AUDIT_CHI_SQUARED_H_
#define FAIRLENS_AUDIT_CHI_SQUARED_H_

#include <span>
#include <vector>

namespace fairlens::audit {

struct ChiSquaredResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int degrees_of_freedom = 0;
  std::vector<double> expected;

  bool operator==(const ChiSquaredResult&) const = default;
};

// Pearson goodness-of-fit of observed per-group counts against benchmark
// proportions (which must be positive and sum to 1 within 1e-9).
ChiSquaredResult chi_squared_group_benchmark(std::span<const double> observed,
                                             std::span<const double> benchmark);

// Scales non-negative weights to sum to one.
std::vector<double> normalize_proportions(std::span<const double> weights);

// Upper tail P(X >= statistic) of a chi-squared distribution.
double chi_squared_survival(double statistic, int degrees_of_freedom);

}  // namespace fairlens::audit

#endif  // FAIRLENS_AUDIT_CHI_SQUARED_H_
