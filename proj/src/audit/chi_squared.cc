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

#include "fairlens/audit/chi_squared.h"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "fairlens/core/error.h"
#include "fairlens/simd/kernels.h"

namespace fairlens::audit {

double chi_squared_survival(double statistic, int degrees_of_freedom) {
  if (degrees_of_freedom < 1) throw Error("degrees of freedom must be >= 1");
  if (!(statistic >= 0.0)) throw Error("chi-squared statistic must be >= 0");
  if (statistic == 0.0) return 1.0;
  return boost::math::gamma_q(degrees_of_freedom / 2.0, statistic / 2.0);
}

std::vector<double> normalize_proportions(std::span<const double> weights) {
  double total = 0.0;
  for (const double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error("proportion weights must be finite and non-negative");
    }
    total += w;
  }
  if (!(total > 0.0)) throw Error("proportion weights sum to zero");
  std::vector<double> out(weights.begin(), weights.end());
  for (double& w : out) w /= total;
  return out;
}

ChiSquaredResult chi_squared_group_benchmark(
    std::span<const double> observed, std::span<const double> benchmark) {
  if (observed.size() != benchmark.size()) {
    throw Error("observed and benchmark group counts differ");
  }
  if (observed.size() < 2) throw Error("chi-squared test needs >= 2 groups");
  double total = 0.0;
  for (const double o : observed) {
    if (!(o >= 0.0) || !std::isfinite(o)) {
      throw Error("observed counts must be finite and non-negative");
    }
    total += o;
  }
  if (!(total > 0.0)) throw Error("total observed count is zero");
  double share = 0.0;
  for (const double b : benchmark) {
    if (!(b > 0.0)) throw Error("zero expected count: benchmark proportions must be positive");
    share += b;
  }
  if (std::fabs(share - 1.0) > 1e-9) {
    throw Error("benchmark proportions must sum to 1");
  }
  ChiSquaredResult r;
  r.expected.resize(observed.size());
  for (size_t i = 0; i < observed.size(); ++i) {
    r.expected[i] = total * benchmark[i];
    if (!(r.expected[i] > 0.0)) throw Error("zero expected count");
  }
  r.statistic = simd::pearson(observed, r.expected);
  r.degrees_of_freedom = static_cast<int>(observed.size()) - 1;
  r.p_value = chi_squared_survival(r.statistic, r.degrees_of_freedom);
  return r;
}

}  // namespace fairlens::audit
