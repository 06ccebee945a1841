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

#include "kernels_impl.hpp"

namespace exal::simd::detail {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_squares(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + alpha * x[i];
}

void add(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void scale(double s, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = s * x[i];
}

void blend(double beta, double omb, const double* m, const double* v, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = beta * m[i] + omb * v[i];
}

void empso_velocity(double beta, double omb, double k1, double k2, const double* m, const double* v,
                    const double* p, const double* g, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = beta * m[i] + omb * v[i] + k1 * (p[i] - x[i]) + k2 * (g[i] - x[i]);
  }
}

void mpso_velocity(double mu, double k1, double k2, const double* v, const double* p, const double* g,
                   const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = mu * v[i] + k1 * (p[i] - x[i]) + k2 * (g[i] - x[i]);
  }
}

void clamp(const double* lo, const double* hi, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double low = x[i] < lo[i] ? lo[i] : x[i];
    x[i] = hi[i] < low ? hi[i] : low;
  }
}

void relu(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = x[i] > 0.0 ? x[i] : 0.0;
}

}  // namespace

const KernelTable kScalarTable{
    Isa::kScalar, dot, sum_squares, axpy, add, scale, blend, empso_velocity, mpso_velocity, clamp, relu,
};

}  // namespace exal::simd::detail
