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

#include <functional>
#include <span>
#include <vector>

#include "exal/learner.hpp"
#include "exal/swarm.hpp"

namespace exal::adversary {

/// The adversary's action: one additive vector applied to every image.
using Perturbation = std::vector<double>;

struct PayoffBreakdown {
  double cost = 0.0;    // L2 norm of the raw perturbation
  double recall = 0.0;  // positive-class recall on the perturbed data
  double error = 0.0;   // 1 - recall
  double payoff = 0.0;  // 1 + error - cost
};

/// Scores `a` against a model carrying `weights`: recall is measured on
/// data + a (unclamped). The caller's model and the dataset are left untouched.
PayoffBreakdown payoff(std::span<const double> a, const learner::ModelWeights& weights,
                       const learner::Dataset& data, const learner::Cnn& model);

/// -payoff(...).payoff; the swarm minimizes this.
double fitness(std::span<const double> a, const learner::ModelWeights& weights,
               const learner::Dataset& data, const learner::Cnn& model);

using ModelFactory = std::function<learner::Cnn()>;

/// Binds frozen weights and data into a fitness closure for the swarm. The
/// closure owns its model copy and allocates its scratch per call, so it can be
/// called from several threads at once.
swarm::FitnessFn make_swarm_fitness(const learner::ModelWeights& weights, const learner::Dataset& data,
                                    const ModelFactory& factory);

}  // namespace exal::adversary
