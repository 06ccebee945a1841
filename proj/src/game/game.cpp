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

#include "exal/game.hpp"

#include <chrono>
#include <cmath>

#include "exal/error.hpp"
#include "exal/simd/kernels.hpp"

namespace exal::game {

void GameConfig::validate() const {
  swarm.validate();
  train.validate();
  if (!(bounds_halfwidth > 0.0) || !std::isfinite(bounds_halfwidth)) {
    throw ConfigError("game.bounds_halfwidth must be > 0");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("game.scale must be > 0");
}

std::uint64_t secure_seed(std::uint64_t train_seed) { return train_seed + 0x9E3779B97F4A7C15ULL; }

ExalOutcome run_exal(const learner::Dataset& train, const GameConfig& config) {
  config.validate();
  ExalOutcome out;
  learner::Cnn model(train.shape(), config.train.seed);
  out.training = learner::train(model, train, config.train);
  out.weights = out.training.weights;

  const auto bounds =
      swarm::Bounds::uniform(train.features(), -config.bounds_halfwidth, config.bounds_halfwidth);
  const auto shape = train.shape();
  const swarm::FitnessFn fitness =
      adversary::make_swarm_fitness(out.weights, train, [shape] { return learner::Cnn(shape, 0); });

  swarm::OptimizeHooks hooks;
  if (config.record_evaluations) {
    hooks.on_evaluation = [&out](const swarm::EvaluationRecord& r) { out.evaluated_payoffs.push_back(-r.fitness); };
  }
  out.search = swarm::optimize(fitness, bounds, config.swarm, hooks);
  out.a_star = out.search.best_velocity;
  return out;
}

GameResult build_and_score(const learner::Dataset& train, const learner::Dataset& test,
                           std::span<const double> a_star, const GameConfig& config,
                           const std::optional<learner::ModelWeights>& original_weights) {
  config.validate();
  if (train.shape() != test.shape()) throw ContractViolation("build_and_score: train/test shapes differ");
  if (a_star.size() != train.features()) {
    throw ContractViolation("build_and_score: A* has " + std::to_string(a_star.size()) +
                            " entries, images have " + std::to_string(train.features()) + " pixels");
  }

  GameResult result;
  result.a_star.assign(a_star.begin(), a_star.end());
  std::vector<double> applied(a_star.size());
  simd::active().scale(config.scale, a_star.data(), applied.data(), applied.size());

  learner::Cnn original(train.shape(), config.train.seed);
  if (original_weights) {
    original.set_weights(*original_weights);
  } else {
    learner::train(original, train, config.train);
  }
  result.original = learner::evaluate(original, test);
  result.manipulated = learner::evaluate(original, test, applied);

  learner::TrainConfig secure_cfg = config.train;
  secure_cfg.seed = secure_seed(config.train.seed);
  learner::Cnn secure(train.shape(), secure_cfg.seed);
  learner::train(secure, train.perturbed(applied), secure_cfg);
  result.secure = learner::evaluate(secure, test, applied);

  result.f1_original = result.original.f1;
  result.f1_manipulated = result.manipulated.f1;
  result.f1_secure = result.secure.f1;
  result.hypothesis_satisfied = result.f1_secure > result.f1_manipulated;
  return result;
}

GameResult play(const learner::Dataset& train, const learner::Dataset& test, const GameConfig& config) {
  ExalOutcome exal = run_exal(train, config);
  GameResult result = build_and_score(train, test, exal.a_star, config, exal.weights);
  result.payoff_trace.reserve(exal.search.trace.size());
  for (double f : exal.search.trace) result.payoff_trace.push_back(-f);
  result.evaluated_payoffs = std::move(exal.evaluated_payoffs);
  return result;
}

std::vector<ResultRow> run_experiment(const data_io::RawLabeledImages& raw,
                                      const std::vector<data_io::PairSpec>& pairs, const GameConfig& config,
                                      std::uint64_t data_seed) {
  std::vector<ResultRow> rows;
  for (const data_io::PairSpec& pair : pairs) {
    const auto start = std::chrono::steady_clock::now();
    const data_io::TrainTestSplit split = data_io::make_pair_dataset(raw, pair, data_seed);
    ResultRow row;
    row.positive = pair.positive;
    row.negative = pair.negative;
    row.scale = config.scale;
    row.seed = data_seed;
    row.result = play(split.train, split.test, config);
    row.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace exal::game
