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

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace exal::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);

// Raw kernels over contiguous doubles. Elementwise kernels evaluate the same
// expression tree in the same order as the scalar reference and never fuse a
// multiply into an add, so every ISA produces bit-identical results for them.
// Reductions (dot, sum_squares) reassociate across lanes and agree with the
// scalar reference only up to rounding.
struct KernelTable {
  Isa isa;

  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const double* a, std::size_t n);

  // y[i] = y[i] + alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[i] = a[i] + b[i]
  void (*add)(const double* a, const double* b, double* out, std::size_t n);
  // out[i] = s * x[i]
  void (*scale)(double s, const double* x, double* out, std::size_t n);
  // out[i] = beta * m[i] + one_minus_beta * v[i]
  void (*blend)(double beta, double one_minus_beta, const double* m, const double* v, double* out,
                std::size_t n);
  // out[i] = beta * m[i] + one_minus_beta * v[i] + k1 * (p[i] - x[i]) + k2 * (g[i] - x[i])
  void (*empso_velocity)(double beta, double one_minus_beta, double k1, double k2, const double* m,
                         const double* v, const double* p, const double* g, const double* x,
                         double* out, std::size_t n);
  // out[i] = mu * v[i] + k1 * (p[i] - x[i]) + k2 * (g[i] - x[i])
  void (*mpso_velocity)(double mu, double k1, double k2, const double* v, const double* p,
                        const double* g, const double* x, double* out, std::size_t n);
  // x[i] = min(max(x[i], lo[i]), hi[i])
  void (*clamp)(const double* lo, const double* hi, double* x, std::size_t n);
  // x[i] = x[i] > 0 ? x[i] : 0
  void (*relu)(double* x, std::size_t n);
};

const KernelTable& scalar_table();

/// True when `isa` was compiled in and the running CPU supports it.
bool supported(Isa isa);

/// Table for a specific ISA. Throws ConfigError when unsupported.
const KernelTable& table(Isa isa);

/// Every ISA usable on this machine, scalar first.
std::vector<Isa> available_isas();

/// The table selected at first use: the widest supported ISA, unless the
/// EXAL_SIMD environment variable names one ("scalar", "avx2", "neon").
const KernelTable& active();

// Span conveniences over the active table. Sizes are the caller's contract.

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline double sum_squares(std::span<const double> a) {
  return active().sum_squares(a.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void add(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  active().add(a.data(), b.data(), out.data(), a.size());
}

}  // namespace exal::simd
