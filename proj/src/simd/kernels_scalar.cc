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

#include <algorithm>

#include "fairlens/simd/kernels.h"

namespace fairlens::simd {
namespace {

double scalar_sum(const double* x, size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (size_t i = 0; i < n; ++i) lane[i & 3] += x[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double scalar_sum_sq_dev(const double* x, size_t n, double center) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (size_t i = 0; i < n; ++i) {
    const double d = x[i] - center;
    lane[i & 3] += d * d;
  }
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double scalar_pearson(const double* observed, const double* expected,
                      size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (size_t i = 0; i < n; ++i) {
    const double d = observed[i] - expected[i];
    lane[i & 3] += (d * d) / expected[i];
  }
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

void scalar_add_inplace(double* dst, const double* src, size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] += src[i];
}

void scalar_max_inplace(double* dst, const double* src, size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = std::max(dst[i], src[i]);
}

ConfusionTally scalar_confusion(const double* scores, const uint8_t* labels,
                                size_t n, double threshold) {
  ConfusionTally t;
  for (size_t i = 0; i < n; ++i) {
    const bool predicted = scores[i] >= threshold;
    const bool actual = labels[i] != 0;
    t.tp += predicted && actual;
    t.fp += predicted && !actual;
    t.fn += !predicted && actual;
    t.tn += !predicted && !actual;
  }
  return t;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      Isa::kScalar,        scalar_sum,         scalar_sum_sq_dev,
      scalar_pearson,      scalar_add_inplace, scalar_max_inplace,
      scalar_confusion,
  };
  return table;
}

}  // namespace fairlens::simd
