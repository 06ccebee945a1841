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
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "exal/rng.hpp"

namespace exal::swarm {

using Vector = std::vector<double>;

enum class Variant { kPso, kMpso, kEmpso };

std::string_view variant_name(Variant v);
/// Parses "pso", "mpso" or "empso"; throws ConfigError otherwise.
Variant parse_variant(std::string_view name);

/// Per-dimension box [lower_i, upper_i].
struct Bounds {
  Vector lower;
  Vector upper;

  static Bounds uniform(std::size_t dims, double lo, double hi);

  std::size_t dims() const noexcept { return lower.size(); }
  /// Throws ConfigError unless d >= 1 and lower_i < upper_i everywhere.
  void validate() const;
};

struct SwarmConfig {
  int particles = 20;
  double beta = 0.9;
  double mu = 0.7;
  double c1 = 2.0;
  double c2 = 2.0;
  int iterations = 50;
  Variant variant = Variant::kEmpso;
  std::uint64_t seed = 0;
  bool clip_velocity = false;
  /// Stop after the sweep in which the global best drops to or below this.
  std::optional<double> stop_fitness;
  /// Threads used for fitness evaluation inside one sweep.
  int workers = 1;

  /// Throws ConfigError on any out-of-range field.
  void validate() const;
};

struct Particle {
  Vector position;
  Vector velocity;  // the candidate solution that gets evaluated
  Vector momentum;
  Vector best_velocity;
  double best_fitness = std::numeric_limits<double>::infinity();

  std::size_t dims() const noexcept { return velocity.size(); }

  /// Records the current velocity as personal best when `fitness` is strictly lower.
  /// Returns whether it did.
  bool update_personal_best(double fitness);
};

struct SwarmState {
  std::vector<Particle> particles;
  std::optional<Vector> gbest_velocity;
  double gbest_fitness = std::numeric_limits<double>::infinity();
  int iteration = 0;
  Rng rng;
};

/// Draws every particle's position, then every particle's velocity, uniformly
/// inside `bounds` from a generator seeded with config.seed.
SwarmState init_swarm(const SwarmConfig& config, const Bounds& bounds);

// Single-step update rules. r1 and r2 are scalars shared by all dimensions.

/// beta * m + (1 - beta) * v
Vector momentum_update(std::span<const double> momentum, std::span<const double> velocity, double beta);

/// beta * m + (1 - beta) * v + c1 r1 (v_p - x) + c2 r2 (g - x)
Vector empso_velocity_update(const Particle& p, std::span<const double> gbest_velocity, double r1,
                             double r2, const SwarmConfig& config);

/// mu * v + c1 r1 (v_p - x) + c2 r2 (g - x); mu = 0 for the plain PSO variant.
Vector mpso_velocity_update(const Particle& p, std::span<const double> gbest_velocity, double r1,
                            double r2, const SwarmConfig& config);

Vector clip_to_bounds(std::span<const double> x, const Bounds& bounds);

using FitnessFn = std::function<double(std::span<const double>)>;

struct EvaluationRecord {
  int iteration;
  std::size_t particle;
  std::span<const double> candidate;
  double fitness;  // after NaN mapping
};

struct OptimizeHooks {
  /// Called for every fitness evaluation, in particle order, from the driving thread.
  std::function<void(const EvaluationRecord&)> on_evaluation;
  /// Called after each completed sweep (bests settled and particles moved).
  std::function<void(const SwarmState&)> on_sweep;
  /// Receives warnings (NaN fitness). Defaults to std::clog when unset.
  std::function<void(std::string_view)> on_warning;
};

struct OptimizeResult {
  Vector best_velocity;
  double best_fitness = std::numeric_limits<double>::infinity();
  /// Global best fitness after each sweep.
  std::vector<double> trace;
  std::size_t nan_evaluations = 0;
};

/// One evaluation phase followed by one movement phase, repeated for
/// config.iterations sweeps (or until stop_fitness is reached).
OptimizeResult optimize(const FitnessFn& fitness, const Bounds& bounds, const SwarmConfig& config,
                        const OptimizeHooks& hooks = {});

struct SweepEvaluation {
  std::vector<double> fitness;  // per particle, NaN already mapped to +inf
  std::size_t nan_count = 0;
};

/// Evaluates every particle (in parallel when workers > 1) and then settles
/// personal and global bests in particle order.
SweepEvaluation evaluate_sweep(SwarmState& state, const FitnessFn& fitness, int workers);

/// Draws r1, r2 per particle in index order and applies the configured update,
/// position step, momentum update and clipping. Requires a global best.
void move_sweep(SwarmState& state, const Bounds& bounds, const SwarmConfig& config);

}  // namespace exal::swarm
