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

#include "fairlens/simd/kernels.h"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define FAIRLENS_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#endif

namespace fairlens::simd {

#ifdef FAIRLENS_HAVE_AVX2_KERNELS
namespace {

#define FAIRLENS_AVX2 __attribute__((target("avx2")))

FAIRLENS_AVX2 double finish_lanes(__m256d acc, const double* tail,
                                  size_t tail_n) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (size_t j = 0; j < tail_n; ++j) lane[j] += tail[j];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

FAIRLENS_AVX2 double avx2_sum(const double* x, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  return finish_lanes(acc, x + i, n - i);
}

FAIRLENS_AVX2 double avx2_sum_sq_dev(const double* x, size_t n,
                                     double center) {
  const __m256d c = _mm256_set1_pd(center);
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double tail[4];
  for (size_t j = 0; i + j < n; ++j) {
    const double d = x[i + j] - center;
    tail[j] = d * d;
  }
  return finish_lanes(acc, tail, n - i);
}

FAIRLENS_AVX2 double avx2_pearson(const double* observed,
                                  const double* expected, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d e = _mm256_loadu_pd(expected + i);
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(observed + i), e);
    acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_mul_pd(d, d), e));
  }
  double tail[4];
  for (size_t j = 0; i + j < n; ++j) {
    const double d = observed[i + j] - expected[i + j];
    tail[j] = (d * d) / expected[i + j];
  }
  return finish_lanes(acc, tail, n - i);
}

FAIRLENS_AVX2 void avx2_add_inplace(double* dst, const double* src,
                                    size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i),
                                            _mm256_loadu_pd(src + i)));
  }
  for (; i < n; ++i) dst[i] += src[i];
}

FAIRLENS_AVX2 void avx2_max_inplace(double* dst, const double* src,
                                    size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // Operand order matches std::max(dst, src): dst wins unless src > dst.
    const __m256d a = _mm256_loadu_pd(dst + i);
    const __m256d b = _mm256_loadu_pd(src + i);
    const __m256d take_b = _mm256_cmp_pd(a, b, _CMP_LT_OQ);
    _mm256_storeu_pd(dst + i, _mm256_blendv_pd(a, b, take_b));
  }
  for (; i < n; ++i) dst[i] = dst[i] < src[i] ? src[i] : dst[i];
}

FAIRLENS_AVX2 ConfusionTally avx2_confusion(const double* scores,
                                            const uint8_t* labels, size_t n,
                                            double threshold) {
  const __m256d t = _mm256_set1_pd(threshold);
  uint64_t predicted_pos = 0;
  uint64_t tp = 0;
  uint64_t actual_pos = 0;
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_loadu_pd(scores + i);
    const unsigned pred =
        static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(s, t, _CMP_GE_OQ)));
    const unsigned act = (labels[i] != 0) | ((labels[i + 1] != 0) << 1) |
                         ((labels[i + 2] != 0) << 2) |
                         ((labels[i + 3] != 0) << 3);
    predicted_pos += __builtin_popcount(pred);
    actual_pos += __builtin_popcount(act);
    tp += __builtin_popcount(pred & act);
  }
  for (; i < n; ++i) {
    const bool p = scores[i] >= threshold;
    const bool a = labels[i] != 0;
    predicted_pos += p;
    actual_pos += a;
    tp += p && a;
  }
  ConfusionTally out;
  out.tp = tp;
  out.fp = predicted_pos - tp;
  out.fn = actual_pos - tp;
  out.tn = n - predicted_pos - out.fn;
  return out;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool supported = __builtin_cpu_supports("avx2");
  static const KernelTable table{
      Isa::kAvx2,       avx2_sum,         avx2_sum_sq_dev, avx2_pearson,
      avx2_add_inplace, avx2_max_inplace, avx2_confusion,
  };
  return supported ? &table : nullptr;
}

#else

const KernelTable* avx2_kernels() { return nullptr; }

#endif

}  // namespace fairlens::simd
