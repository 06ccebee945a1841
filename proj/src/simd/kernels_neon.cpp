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

// AArch64 only; NEON is baseline there so no runtime probe is needed.
#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace exal::simd::detail {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_squares(const double* a, std::size_t n) { return dot(a, a, n); }

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void add(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void scale(double s, const double* x, double* out, std::size_t n) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vs, vld1q_f64(x + i)));
  for (; i < n; ++i) out[i] = s * x[i];
}

void blend(double beta, double omb, const double* m, const double* v, double* out, std::size_t n) {
  const float64x2_t vb = vdupq_n_f64(beta);
  const float64x2_t vo = vdupq_n_f64(omb);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vaddq_f64(vmulq_f64(vb, vld1q_f64(m + i)), vmulq_f64(vo, vld1q_f64(v + i))));
  }
  for (; i < n; ++i) out[i] = beta * m[i] + omb * v[i];
}

void empso_velocity(double beta, double omb, double k1, double k2, const double* m, const double* v,
                    const double* p, const double* g, const double* x, double* out, std::size_t n) {
  const float64x2_t vb = vdupq_n_f64(beta);
  const float64x2_t vo = vdupq_n_f64(omb);
  const float64x2_t vk1 = vdupq_n_f64(k1);
  const float64x2_t vk2 = vdupq_n_f64(k2);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t xi = vld1q_f64(x + i);
    float64x2_t acc = vaddq_f64(vmulq_f64(vb, vld1q_f64(m + i)), vmulq_f64(vo, vld1q_f64(v + i)));
    acc = vaddq_f64(acc, vmulq_f64(vk1, vsubq_f64(vld1q_f64(p + i), xi)));
    acc = vaddq_f64(acc, vmulq_f64(vk2, vsubq_f64(vld1q_f64(g + i), xi)));
    vst1q_f64(out + i, acc);
  }
  for (; i < n; ++i) {
    out[i] = beta * m[i] + omb * v[i] + k1 * (p[i] - x[i]) + k2 * (g[i] - x[i]);
  }
}

void mpso_velocity(double mu, double k1, double k2, const double* v, const double* p, const double* g,
                   const double* x, double* out, std::size_t n) {
  const float64x2_t vmu = vdupq_n_f64(mu);
  const float64x2_t vk1 = vdupq_n_f64(k1);
  const float64x2_t vk2 = vdupq_n_f64(k2);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t xi = vld1q_f64(x + i);
    float64x2_t acc = vmulq_f64(vmu, vld1q_f64(v + i));
    acc = vaddq_f64(acc, vmulq_f64(vk1, vsubq_f64(vld1q_f64(p + i), xi)));
    acc = vaddq_f64(acc, vmulq_f64(vk2, vsubq_f64(vld1q_f64(g + i), xi)));
    vst1q_f64(out + i, acc);
  }
  for (; i < n; ++i) out[i] = mu * v[i] + k1 * (p[i] - x[i]) + k2 * (g[i] - x[i]);
}

void clamp(const double* lo, const double* hi, double* x, std::size_t n) {
  std::size_t i = 0;
  // vmaxq/vminq propagate NaN, so use compare-and-select to mirror the scalar ternaries.
  for (; i + 2 <= n; i += 2) {
    const float64x2_t xi = vld1q_f64(x + i);
    const float64x2_t l = vld1q_f64(lo + i);
    const float64x2_t h = vld1q_f64(hi + i);
    const float64x2_t low = vbslq_f64(vcltq_f64(xi, l), l, xi);
    vst1q_f64(x + i, vbslq_f64(vcltq_f64(h, low), h, low));
  }
  for (; i < n; ++i) {
    const double low = x[i] < lo[i] ? lo[i] : x[i];
    x[i] = hi[i] < low ? hi[i] : low;
  }
}

void relu(double* x, std::size_t n) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t xi = vld1q_f64(x + i);
    vst1q_f64(x + i, vbslq_f64(vcgtq_f64(xi, zero), xi, zero));
  }
  for (; i < n; ++i) x[i] = x[i] > 0.0 ? x[i] : 0.0;
}

}  // namespace

const KernelTable kNeonTable{
    Isa::kNeon, dot, sum_squares, axpy, add, scale, blend, empso_velocity, mpso_velocity, clamp, relu,
};

}  // namespace exal::simd::detail
