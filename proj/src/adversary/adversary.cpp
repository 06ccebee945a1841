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

#include "exal/adversary.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "exal/error.hpp"
#include "exal/simd/kernels.hpp"

namespace exal::adversary {
namespace {

void check_length(std::span<const double> a, const learner::Dataset& data) {
  if (a.size() != data.features()) {
    throw ContractViolation("perturbation has " + std::to_string(a.size()) + " entries, dataset images have " +
                            std::to_string(data.features()) + " pixels");
  }
}

// Assumes `model` already carries the frozen weights.
PayoffBreakdown score(std::span<const double> a, const learner::Dataset& data, const learner::Cnn& model) {
  PayoffBreakdown out;
  out.cost = std::sqrt(simd::sum_squares(a));
  out.recall = learner::evaluate(model, data, a).recall;
  out.error = 1.0 - out.recall;
  out.payoff = 1.0 + out.error - out.cost;
  return out;
}

}  // namespace

PayoffBreakdown payoff(std::span<const double> a, const learner::ModelWeights& weights,
                       const learner::Dataset& data, const learner::Cnn& model) {
  check_length(a, data);
  learner::Cnn frozen = model;
  frozen.set_weights(weights);
  return score(a, data, frozen);
}

double fitness(std::span<const double> a, const learner::ModelWeights& weights, const learner::Dataset& data,
               const learner::Cnn& model) {
  return -payoff(a, weights, data, model).payoff;
}

swarm::FitnessFn make_swarm_fitness(const learner::ModelWeights& weights, const learner::Dataset& data,
                                    const ModelFactory& factory) {
  auto model = std::make_shared<learner::Cnn>(factory());
  model->set_weights(weights);
  auto frozen_data = std::make_shared<const learner::Dataset>(data);
  return [model = std::shared_ptr<const learner::Cnn>(std::move(model)),
          frozen_data](std::span<const double> a) {
    check_length(a, *frozen_data);
    return -score(a, *frozen_data, *model).payoff;
  };
}

}  // namespace exal::adversary
