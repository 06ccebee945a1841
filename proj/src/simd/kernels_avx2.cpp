/*
 * Copyright 2026 The ExAL Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Compiled with -mavx2 -mfma. Only reached after a runtime CPU check.
#include <immintrin.h>

#include "kernels_impl.hpp"

namespace exal::simd::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_squares(const double* a, std::size_t n) { return dot(a, a, n); }

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void add(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void scale(double s, const double* x, double* out, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, _mm256_mul_pd(vs, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = s * x[i];
}

void blend(double beta, double omb, const double* m, const double* v, double* out, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(beta);
  const __m256d vo = _mm256_set1_pd(omb);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d lhs = _mm256_mul_pd(vb, _mm256_loadu_pd(m + i));
    const __m256d rhs = _mm256_mul_pd(vo, _mm256_loadu_pd(v + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(lhs, rhs));
  }
  for (; i < n; ++i) out[i] = beta * m[i] + omb * v[i];
}

void empso_velocity(double beta, double omb, double k1, double k2, const double* m, const double* v,
                    const double* p, const double* g, const double* x, double* out, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(beta);
  const __m256d vo = _mm256_set1_pd(omb);
  const __m256d vk1 = _mm256_set1_pd(k1);
  const __m256d vk2 = _mm256_set1_pd(k2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    __m256d acc = _mm256_add_pd(_mm256_mul_pd(vb, _mm256_loadu_pd(m + i)),
                                _mm256_mul_pd(vo, _mm256_loadu_pd(v + i)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vk1, _mm256_sub_pd(_mm256_loadu_pd(p + i), xi)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vk2, _mm256_sub_pd(_mm256_loadu_pd(g + i), xi)));
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    out[i] = beta * m[i] + omb * v[i] + k1 * (p[i] - x[i]) + k2 * (g[i] - x[i]);
  }
}

void mpso_velocity(double mu, double k1, double k2, const double* v, const double* p, const double* g,
                   const double* x, double* out, std::size_t n) {
  const __m256d vmu = _mm256_set1_pd(mu);
  const __m256d vk1 = _mm256_set1_pd(k1);
  const __m256d vk2 = _mm256_set1_pd(k2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    __m256d acc = _mm256_mul_pd(vmu, _mm256_loadu_pd(v + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vk1, _mm256_sub_pd(_mm256_loadu_pd(p + i), xi)));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vk2, _mm256_sub_pd(_mm256_loadu_pd(g + i), xi)));
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) out[i] = mu * v[i] + k1 * (p[i] - x[i]) + k2 * (g[i] - x[i]);
}

void clamp(const double* lo, const double* hi, double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // max_pd(a, b) = a > b ? a : b and min_pd(a, b) = a < b ? a : b, which
    // matches the scalar ternaries operand for operand (NaN included).
    const __m256d low = _mm256_max_pd(_mm256_loadu_pd(lo + i), _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(x + i, _mm256_min_pd(_mm256_loadu_pd(hi + i), low));
  }
  for (; i < n; ++i) {
    const double low = x[i] < lo[i] ? lo[i] : x[i];
    x[i] = hi[i] < low ? hi[i] : low;
  }
}

void relu(double* x, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  // max_pd(x, 0) returns 0 for NaN and -0.0, like the scalar ternary.
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_max_pd(_mm256_loadu_pd(x + i), zero));
  for (; i < n; ++i) x[i] = x[i] > 0.0 ? x[i] : 0.0;
}

}  // namespace

const KernelTable kAvx2Table{
    Isa::kAvx2, dot, sum_squares, axpy, add, scale, blend, empso_velocity, mpso_velocity, clamp, relu,
};

}  // namespace exal::simd::detail
