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

#include "exal/error.hpp"
#include "exal/learner.hpp"

namespace exal::learner {

Metrics metrics_from_counts(const ConfusionCounts& counts) {
  Metrics m;
  m.counts = counts;
  const auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  m.recall = ratio(counts.tp, counts.tp + counts.fn);
  m.precision = ratio(counts.tp, counts.tp + counts.fp);
  const double denom = m.precision + m.recall;
  m.f1 = denom > 0.0 ? 2.0 * m.precision * m.recall / denom : 0.0;
  return m;
}

Metrics metrics_from_predictions(std::span<const std::uint8_t> labels,
                                 std::span<const std::uint8_t> predictions) {
  if (labels.size() != predictions.size()) {
    throw ContractViolation("metrics: label and prediction counts differ");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool actual = labels[i] == 1;
    const bool predicted = predictions[i] == 1;
    if (actual && predicted) {
      ++c.tp;
    } else if (actual) {
      ++c.fn;
    } else if (predicted) {
      ++c.fp;
    } else {
      ++c.tn;
    }
  }
  return metrics_from_counts(c);
}

}  // namespace exal::learner
