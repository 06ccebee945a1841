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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "exal/cli/config.hpp"

namespace exal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;

/// Runs `body` and maps escaping exceptions to exit codes, printing the message to `err`:
/// ConfigError and ContractViolation give 2, DataError gives 3, anything else 1.
int guarded(std::ostream& err, const std::function<int()>& body);

struct RunGameOptions {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> pairs;  // "a:b,c:d"
  std::optional<double> scale;
  std::optional<std::filesystem::path> out;
};

/// Per pair: load and split the data, run the game, then write
///   results.csv, perturbation_<pos>_<neg>.exalp, loss_<pos>_<neg>.csv,
///   images/<pos>_<neg>/<class>_<k>_{original,perturbation,perturbed}.pgm
/// and run_manifest.json under the output directory.
int cmd_run_game(const RunGameOptions& options, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::string function;
  std::size_t dims = 2;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> config;  // swarm.* keys are used
  std::optional<std::filesystem::path> out;     // CSV destination; stdout when absent
};

/// Runs PSO, MPSO and EMPSO from the same seed on a benchmark function and
/// emits "iteration,variant,fitness" with one row per sweep and variant.
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

struct ExportOptions {
  std::filesystem::path perturbation;
  std::filesystem::path config;
  double scale = 1.0;
  std::filesystem::path out;
  std::optional<int> per_class;
};

/// Writes triptychs for the first k images of each class of the configured data.
int cmd_export_images(const ExportOptions& options, std::ostream& out, std::ostream& err);

}  // namespace exal::cli
