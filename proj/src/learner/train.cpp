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

#include <cmath>
#include <numeric>
#include <string>

#include "exal/error.hpp"
#include "exal/learner.hpp"
#include "exal/rng.hpp"
#include "exal/simd/kernels.hpp"

namespace exal::learner {

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("train.epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("train.batch_size must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("train.learning_rate must be > 0");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) throw ConfigError("train.momentum must lie in [0, 1)");
}

TrainReport train(Cnn& model, const Dataset& data, const TrainConfig& config) {
  config.validate();
  if (data.empty()) throw ConfigError("train: dataset is empty");
  if (data.count_label(0) == 0 || data.count_label(1) == 0) {
    throw ConfigError("train: dataset must contain both classes");
  }
  if (data.shape() != model.shape()) throw ContractViolation("train: dataset shape differs from model");

  // Decorrelate the shuffle stream from the initialization stream of a model built with the same seed.
  Rng rng(config.seed ^ 0xD1B54A32D192ED03ULL);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> velocity(model.parameter_count(), 0.0);
  const auto& k = simd::active();
  const auto batch = static_cast<std::size_t>(config.batch_size);

  TrainReport report;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order.begin(), order.end());
    double loss_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t len = std::min(batch, order.size() - start);
      const LossAndGradients lg = model.loss_and_gradients(data, {order.data() + start, len});
      loss_sum += lg.loss;
      ++batches;
      // u <- momentum * u - lr * g ; theta <- theta + u
      k.blend(config.momentum, -config.learning_rate, velocity.data(), lg.gradients.data(),
              velocity.data(), velocity.size());
      auto params = model.parameters();
      k.add(params.data(), velocity.data(), params.data(), params.size());
    }
    report.epoch_loss.push_back(loss_sum / static_cast<double>(batches));
  }
  report.weights = model.get_weights();
  return report;
}

std::vector<std::uint8_t> predict_all(const Cnn& model, const Dataset& data, std::span<const double> offset) {
  if (data.shape() != model.shape()) throw ContractViolation("predict: dataset shape differs from model");
  Workspace ws = model.make_workspace();
  std::vector<std::uint8_t> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = model.predict(data.row(i), ws, offset);
  return out;
}

Metrics evaluate(const Cnn& model, const Dataset& data, std::span<const double> offset) {
  const std::vector<std::uint8_t> predictions = predict_all(model, data, offset);
  return metrics_from_predictions(data.labels(), predictions);
}

}  // namespace exal::learner
