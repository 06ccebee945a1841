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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "exal/data_io.hpp"
#include "exal/error.hpp"
#include "exal/rng.hpp"

namespace exal::data_io {

std::pair<std::vector<double>, std::vector<double>> synthetic_templates(const SyntheticSpec& spec) {
  const int h = spec.shape.height;
  const int w = spec.shape.width;
  const double cy = (h - 1) / 2.0;
  const double cx = (w - 1) / 2.0;
  const double sigma = std::min(h, w) / 4.0;
  std::vector<double> low(spec.shape.pixels(), 0.5 - 0.3 * spec.separation);
  std::vector<double> high(spec.shape.pixels());
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const double d2 = (r - cy) * (r - cy) + (c - cx) * (c - cx);
      const double blob = std::exp(-d2 / (2.0 * sigma * sigma));
      high[static_cast<std::size_t>(r * w + c)] = 0.5 + 0.3 * spec.separation * (0.5 + 0.5 * blob);
    }
  }
  return {std::move(low), std::move(high)};
}

learner::Dataset make_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  if (spec.shape.height < 8 || spec.shape.width < 8) throw ConfigError("synthetic images must be at least 8x8");
  if (spec.per_class < 1) throw ConfigError("synthetic: per_class must be >= 1");
  if (!(spec.separation >= 0.0 && spec.separation <= 1.0)) {
    throw ConfigError("synthetic: separation must lie in [0, 1]");
  }
  if (!(spec.noise >= 0.0)) throw ConfigError("synthetic: noise must be >= 0");

  const auto [low, high] = synthetic_templates(spec);
  const std::size_t m = spec.shape.pixels();
  const std::size_t n = 2 * spec.per_class;
  Rng rng(seed);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order.begin(), order.end());

  std::vector<double> pixels(n * m);
  std::vector<std::uint8_t> labels(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Rows [0, per_class) of the unshuffled layout are class 0.
    const std::uint8_t y = order[k] < spec.per_class ? 0 : 1;
    const std::vector<double>& tmpl = y == 1 ? high : low;
    labels[k] = y;
    for (std::size_t j = 0; j < m; ++j) {
      pixels[k * m + j] = std::clamp(tmpl[j] + spec.noise * rng.normal(), 0.0, 1.0);
    }
  }
  return learner::Dataset(spec.shape, std::move(pixels), std::move(labels));
}

}  // namespace exal::data_io
