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

#include "exal/benchmark_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "exal/error.hpp"
#include "exal/simd/kernels.hpp"

namespace exal::swarm {
namespace {

constexpr std::array<BenchmarkFunction, 3> kFunctions{{
    {"sphere", sphere, -5.0, 5.0},
    {"rastrigin", rastrigin, -5.12, 5.12},
    {"rosenbrock", rosenbrock, -5.0, 10.0},
}};

}  // namespace

double sphere(std::span<const double> v) { return simd::sum_squares(v); }

double rastrigin(std::span<const double> v) {
  double acc = 10.0 * static_cast<double>(v.size());
  for (double x : v) acc += x * x - 10.0 * std::cos(2.0 * std::numbers::pi * x);
  return acc;
}

double rosenbrock(std::span<const double> v) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double a = v[i + 1] - v[i] * v[i];
    const double b = 1.0 - v[i];
    acc += 100.0 * a * a + b * b;
  }
  return acc;
}

const BenchmarkFunction& benchmark_function(std::string_view name) {
  for (const auto& f : kFunctions) {
    if (f.name == name) return f;
  }
  throw ConfigError("unknown benchmark function '" + std::string(name) +
                    "' (expected sphere, rastrigin or rosenbrock)");
}

std::vector<std::string_view> benchmark_function_names() {
  std::vector<std::string_view> out;
  for (const auto& f : kFunctions) out.push_back(f.name);
  return out;
}

}  // namespace exal::swarm
