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

#ifndef FAIRLENS_SIMD_KERNELS_H_
#define FAIRLENS_SIMD_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Data-parallel inner loops shared by the audit, ensemble and risk-curve code.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2
// variant picked once at startup. Reductions accumulate in four interleaved
// lanes in both variants (element i goes to lane i % 4, lanes combined as
// (l0 + l1) + (l2 + l3)), so the two variants are bit-identical and ledgers do
// not depend on the host ISA.

namespace fairlens::simd {

enum class Isa { kScalar, kAvx2 };

struct ConfusionTally {
  uint64_t tp = 0;
  uint64_t fp = 0;
  uint64_t tn = 0;
  uint64_t fn = 0;
};

struct KernelTable {
  Isa isa;
  double (*sum)(const double* x, size_t n);
  // Sum of (x[i] - center)^2.
  double (*sum_sq_dev)(const double* x, size_t n, double center);
  // Pearson terms: sum of (observed - expected)^2 / expected.
  double (*pearson)(const double* observed, const double* expected, size_t n);
  void (*add_inplace)(double* dst, const double* src, size_t n);
  void (*max_inplace)(double* dst, const double* src, size_t n);
  // Predicted positive iff score >= threshold; labels are 0/1 bytes.
  ConfusionTally (*confusion)(const double* scores, const uint8_t* labels,
                              size_t n, double threshold);
};

const KernelTable& scalar_kernels();

// Null when the AVX2 variant is not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

// Selected once: FAIRLENS_SIMD=scalar|avx2|auto (default auto).
const KernelTable& active_kernels();

std::string_view isa_name(Isa isa);

inline double sum(std::span<const double> x) {
  return active_kernels().sum(x.data(), x.size());
}
inline double sum_sq_dev(std::span<const double> x, double center) {
  return active_kernels().sum_sq_dev(x.data(), x.size(), center);
}
inline double pearson(std::span<const double> observed,
                      std::span<const double> expected) {
  return active_kernels().pearson(observed.data(), expected.data(),
                                  observed.size());
}
inline void add_inplace(std::span<double> dst, std::span<const double> src) {
  active_kernels().add_inplace(dst.data(), src.data(), dst.size());
}
inline void max_inplace(std::span<double> dst, std::span<const double> src) {
  active_kernels().max_inplace(dst.data(), src.data(), dst.size());
}
inline ConfusionTally confusion(std::span<const double> scores,
                                std::span<const uint8_t> labels,
                                double threshold) {
  return active_kernels().confusion(scores.data(), labels.data(), scores.size(),
                                    threshold);
}

}  // namespace fairlens::simd

#endif  // FAIRLENS_SIMD_KERNELS_H_
