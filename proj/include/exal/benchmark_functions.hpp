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

#include <span>
#include <string_view>
#include <vector>

#include "exal/swarm.hpp"

namespace exal::swarm {

// Standard test landscapes for validating the optimizer on its own.
// All three have global minimum 0.

double sphere(std::span<const double> v);
double rastrigin(std::span<const double> v);
double rosenbrock(std::span<const double> v);

struct BenchmarkFunction {
  std::string_view name;
  double (*fn)(std::span<const double>);
  double lower;  // conventional symmetric-ish search box
  double upper;
};

/// Looks up "sphere", "rastrigin" or "rosenbrock"; throws ConfigError otherwise.
const BenchmarkFunction& benchmark_function(std::string_view name);

std::vector<std::string_view> benchmark_function_names();

}  // namespace exal::swarm
