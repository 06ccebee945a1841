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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exal/adversary.hpp"
#include "exal/data_io.hpp"
#include "exal/learner.hpp"
#include "exal/swarm.hpp"

namespace exal::game {

struct GameConfig {
  swarm::SwarmConfig swarm;
  learner::TrainConfig train;
  /// Per-pixel search box is [-bounds_halfwidth, +bounds_halfwidth].
  double bounds_halfwidth = 0.1;
  /// Applied to A* after the search: the manipulated data use scale * A*.
  double scale = 1.0;
  /// Keep every (candidate payoff) seen by the swarm in the result.
  bool record_evaluations = false;

  void validate() const;
};

/// Seed of the secure model, derived from the original model's seed.
std::uint64_t secure_seed(std::uint64_t train_seed);

struct ExalOutcome {
  adversary::Perturbation a_star;
  learner::ModelWeights weights;  // the frozen learner the adversary attacked
  learner::TrainReport training;
  swarm::OptimizeResult search;
  /// Payoff of every evaluated candidate, in evaluation order (only when recorded).
  std::vector<double> evaluated_payoffs;
};

/// Trains the learner on clean data, freezes it, and runs the swarm over the
/// adversary's fitness inside the per-pixel box. A* is the global best velocity.
ExalOutcome run_exal(const learner::Dataset& train, const GameConfig& config);

struct GameResult {
  adversary::Perturbation a_star;
  learner::Metrics original;
  learner::Metrics manipulated;
  learner::Metrics secure;
  double f1_original = 0.0;
  double f1_manipulated = 0.0;
  double f1_secure = 0.0;
  bool hypothesis_satisfied = false;  // f1_secure > f1_manipulated
  /// Best payoff after each swarm sweep (non-decreasing).
  std::vector<double> payoff_trace;
  std::vector<double> evaluated_payoffs;
};

/// Builds the three models for A = scale * a_star:
///   original:    trained on train,     evaluated on test
///   manipulated: original's weights,   evaluated on test + A
///   secure:      trained on train + A, evaluated on test + A
/// `original_weights`, when given, replaces retraining the original model.
GameResult build_and_score(const learner::Dataset& train, const learner::Dataset& test,
                           std::span<const double> a_star, const GameConfig& config,
                           const std::optional<learner::ModelWeights>& original_weights = std::nullopt);

/// run_exal followed by build_and_score, reusing the attacked model as the original.
GameResult play(const learner::Dataset& train, const learner::Dataset& test, const GameConfig& config);

struct ResultRow {
  std::string positive;
  std::string negative;
  double scale = 1.0;
  GameResult result;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;
};

/// For each pair: filter, subsample and split `raw`, then play(). An unknown
/// label raises ConfigError naming it.
std::vector<ResultRow> run_experiment(const data_io::RawLabeledImages& raw,
                                      const std::vector<data_io::PairSpec>& pairs, const GameConfig& config,
                                      std::uint64_t data_seed);

// ---- Serialization

std::string_view hypothesis_label(bool satisfied);  // "Satisfied" / "Not Satisfied"

/// Header: labels_pos,labels_neg,scale,f1_original,f1_manipulated,f1_secure,hypothesis,seed,runtime_seconds
std::string results_csv(std::span<const ResultRow> rows);
void write_results_csv(std::span<const ResultRow> rows, const std::filesystem::path& path);

// Perturbation container: "EXALP1", u32 m, 6 reserved zero bytes, then m f64. Little-endian.
std::vector<std::uint8_t> encode_perturbation(std::span<const double> a);
std::vector<double> decode_perturbation(std::span<const std::uint8_t> bytes);
void write_perturbation(std::span<const double> a, const std::filesystem::path& path);
std::vector<double> read_perturbation(const std::filesystem::path& path);

}  // namespace exal::game
