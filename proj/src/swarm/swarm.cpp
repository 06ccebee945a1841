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

#include "exal/swarm.hpp"

#include <cmath>
#include <iostream>
#include <string>
#include <thread>

#include "exal/error.hpp"
#include "exal/simd/kernels.hpp"

namespace exal::swarm {
namespace {

void require_same_dims(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ContractViolation(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                            " vs " + std::to_string(b) + ")");
  }
}

void check_particle(const Particle& p, std::span<const double> gbest) {
  const std::size_t d = p.velocity.size();
  require_same_dims(p.position.size(), d, "particle position");
  require_same_dims(p.momentum.size(), d, "particle momentum");
  require_same_dims(p.best_velocity.size(), d, "particle best velocity");
  require_same_dims(gbest.size(), d, "global best velocity");
}

}  // namespace

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kPso:
      return "pso";
    case Variant::kMpso:
      return "mpso";
    case Variant::kEmpso:
      return "empso";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::kPso, Variant::kMpso, Variant::kEmpso}) {
    if (name == variant_name(v)) return v;
  }
  throw ConfigError("unknown swarm variant '" + std::string(name) + "' (expected pso, mpso or empso)");
}

Bounds Bounds::uniform(std::size_t dims, double lo, double hi) {
  return Bounds{Vector(dims, lo), Vector(dims, hi)};
}

void Bounds::validate() const {
  if (lower.empty()) throw ConfigError("bounds: need at least one dimension");
  if (lower.size() != upper.size()) throw ConfigError("bounds: lower/upper length mismatch");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) {
      throw ConfigError("bounds: dimension " + std::to_string(i) + " has min >= max");
    }
  }
}

void SwarmConfig::validate() const {
  if (particles < 1) throw ConfigError("swarm.n_p must be >= 1");
  if (iterations < 1) throw ConfigError("swarm.t_max must be >= 1");
  if (!(beta >= 0.0 && beta <= 1.0)) throw ConfigError("swarm.beta must lie in [0, 1]");
  if (!(mu >= 0.0 && mu <= 1.0)) throw ConfigError("swarm.mu must lie in [0, 1]");
  if (!(c1 >= 0.0) || !std::isfinite(c1)) throw ConfigError("swarm.c1 must be >= 0");
  if (!(c2 >= 0.0) || !std::isfinite(c2)) throw ConfigError("swarm.c2 must be >= 0");
  if (workers < 1) throw ConfigError("swarm.workers must be >= 1");
}

bool Particle::update_personal_best(double fitness) {
  if (fitness < best_fitness) {
    best_fitness = fitness;
    best_velocity = velocity;
    return true;
  }
  return false;
}

SwarmState init_swarm(const SwarmConfig& config, const Bounds& bounds) {
  config.validate();
  bounds.validate();
  const std::size_t d = bounds.dims();
  SwarmState state{{}, std::nullopt, std::numeric_limits<double>::infinity(), 0, Rng(config.seed)};
  state.particles.resize(static_cast<std::size_t>(config.particles));
  for (Particle& p : state.particles) {
    p.position.resize(d);
    for (std::size_t j = 0; j < d; ++j) p.position[j] = state.rng.uniform(bounds.lower[j], bounds.upper[j]);
  }
  for (Particle& p : state.particles) {
    p.velocity.resize(d);
    for (std::size_t j = 0; j < d; ++j) p.velocity[j] = state.rng.uniform(bounds.lower[j], bounds.upper[j]);
    p.momentum.assign(d, 0.0);
    p.best_velocity = p.velocity;
  }
  return state;
}

Vector momentum_update(std::span<const double> momentum, std::span<const double> velocity, double beta) {
  require_same_dims(momentum.size(), velocity.size(), "momentum_update");
  Vector out(momentum.size());
  simd::active().blend(beta, 1.0 - beta, momentum.data(), velocity.data(), out.data(), out.size());
  return out;
}

Vector empso_velocity_update(const Particle& p, std::span<const double> gbest_velocity, double r1,
                             double r2, const SwarmConfig& config) {
  check_particle(p, gbest_velocity);
  Vector out(p.dims());
  simd::active().empso_velocity(config.beta, 1.0 - config.beta, config.c1 * r1, config.c2 * r2,
                                p.momentum.data(), p.velocity.data(), p.best_velocity.data(),
                                gbest_velocity.data(), p.position.data(), out.data(), out.size());
  return out;
}

Vector mpso_velocity_update(const Particle& p, std::span<const double> gbest_velocity, double r1,
                            double r2, const SwarmConfig& config) {
  check_particle(p, gbest_velocity);
  const double mu = config.variant == Variant::kPso ? 0.0 : config.mu;
  Vector out(p.dims());
  simd::active().mpso_velocity(mu, config.c1 * r1, config.c2 * r2, p.velocity.data(),
                               p.best_velocity.data(), gbest_velocity.data(), p.position.data(),
                               out.data(), out.size());
  return out;
}

Vector clip_to_bounds(std::span<const double> x, const Bounds& bounds) {
  require_same_dims(x.size(), bounds.dims(), "clip_to_bounds");
  Vector out(x.begin(), x.end());
  simd::active().clamp(bounds.lower.data(), bounds.upper.data(), out.data(), out.size());
  return out;
}

SweepEvaluation evaluate_sweep(SwarmState& state, const FitnessFn& fitness, int workers) {
  const std::size_t n = state.particles.size();
  SweepEvaluation out;
  std::vector<double>& values = out.fitness;
  values.resize(n);
  auto eval_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) values[i] = fitness(state.particles[i].velocity);
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
  if (threads <= 1) {
    eval_range(0, n);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(eval_range, t * n / threads, (t + 1) * n / threads);
    }
  }

  // Single-writer phase: bests are settled in particle order.
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(values[i])) {
      values[i] = std::numeric_limits<double>::infinity();
      ++out.nan_count;
    }
    Particle& p = state.particles[i];
    p.update_personal_best(values[i]);
    if (values[i] < state.gbest_fitness) {
      state.gbest_fitness = values[i];
      state.gbest_velocity = p.velocity;
    }
  }
  return out;
}

void move_sweep(SwarmState& state, const Bounds& bounds, const SwarmConfig& config) {
  if (!state.gbest_velocity) {
    throw ContractViolation("move_sweep: no global best yet (every evaluation was +inf or NaN)");
  }
  const Vector& gbest = *state.gbest_velocity;
  const auto& kernels = simd::active();
  for (Particle& p : state.particles) {
    const double r1 = state.rng.uniform01();
    const double r2 = state.rng.uniform01();
    p.velocity = config.variant == Variant::kEmpso ? empso_velocity_update(p, gbest, r1, r2, config)
                                                   : mpso_velocity_update(p, gbest, r1, r2, config);
    if (config.clip_velocity) {
      kernels.clamp(bounds.lower.data(), bounds.upper.data(), p.velocity.data(), p.dims());
    }
    kernels.add(p.position.data(), p.velocity.data(), p.position.data(), p.dims());
    kernels.blend(config.beta, 1.0 - config.beta, p.momentum.data(), p.velocity.data(),
                  p.momentum.data(), p.dims());
    kernels.clamp(bounds.lower.data(), bounds.upper.data(), p.position.data(), p.dims());
  }
  ++state.iteration;
}

OptimizeResult optimize(const FitnessFn& fitness, const Bounds& bounds, const SwarmConfig& config,
                        const OptimizeHooks& hooks) {
  SwarmState state = init_swarm(config, bounds);
  OptimizeResult result;
  result.trace.reserve(static_cast<std::size_t>(config.iterations));

  for (int t = 0; t < config.iterations; ++t) {
    const SweepEvaluation sweep = evaluate_sweep(state, fitness, config.workers);
    if (sweep.nan_count > 0) {
      result.nan_evaluations += sweep.nan_count;
      const std::string msg = "swarm: " + std::to_string(sweep.nan_count) +
                              " NaN fitness value(s) in sweep " + std::to_string(t) +
                              " treated as +inf";
      if (hooks.on_warning) {
        hooks.on_warning(msg);
      } else {
        std::clog << "warning: " << msg << '\n';
      }
    }
    if (hooks.on_evaluation) {
      for (std::size_t i = 0; i < state.particles.size(); ++i) {
        hooks.on_evaluation({t, i, state.particles[i].velocity, sweep.fitness[i]});
      }
    }
    result.trace.push_back(state.gbest_fitness);

    const bool stop = config.stop_fitness && state.gbest_fitness <= *config.stop_fitness;
    // With no finite evaluation yet there is nothing to attract towards.
    if (state.gbest_velocity) move_sweep(state, bounds, config);
    if (hooks.on_sweep) hooks.on_sweep(state);
    if (stop) break;
  }

  if (state.gbest_velocity) {
    result.best_velocity = *state.gbest_velocity;
  } else {
    // Every evaluation was +inf or NaN; report the first particle's initial candidate.
    result.best_velocity = state.particles.front().best_velocity;
  }
  result.best_fitness = state.gbest_fitness;
  return result;
}

}  // namespace exal::swarm
