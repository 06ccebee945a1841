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
#include <string>

#include "exal/data_io.hpp"
#include "exal/error.hpp"

namespace exal::data_io {
namespace {

GrayImage to_gray(std::span<const double> values, learner::ImageShape shape) {
  GrayImage img;
  img.width = shape.width;
  img.height = shape.height;
  img.pixels.resize(values.size());
  std::transform(values.begin(), values.end(), img.pixels.begin(), to_byte);
  return img;
}

}  // namespace

std::uint8_t to_byte(double v) {
  if (!(v > 0.0)) return 0;  // also catches NaN
  if (v >= 1.0) return 255;
  return static_cast<std::uint8_t>(std::lround(v * 255.0));
}

std::vector<double> minmax_normalize(std::span<const double> v) {
  std::vector<double> out(v.size(), 0.5);
  if (v.empty()) return out;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - *lo) / range;
  return out;
}

TriptychPaths export_triptych(std::span<const double> image, std::span<const double> a, double scale,
                              learner::ImageShape shape, const std::filesystem::path& stem) {
  if (image.size() != shape.pixels() || a.size() != shape.pixels()) {
    throw ContractViolation("export_triptych: image has " + std::to_string(image.size()) + " values and " +
                            "perturbation " + std::to_string(a.size()) + ", shape needs " +
                            std::to_string(shape.pixels()));
  }
  std::vector<double> perturbed(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) perturbed[i] = image[i] + scale * a[i];

  // minmax(s * a) == minmax(a) for s > 0; normalizing the unscaled vector keeps
  // the panel byte-identical across positive scales.
  std::vector<double> panel = minmax_normalize(a);
  if (scale == 0.0) {
    std::fill(panel.begin(), panel.end(), 0.5);
  } else if (scale < 0.0) {
    for (double& v : panel) v = 1.0 - v;
  }
  const std::string base = stem.string();
  TriptychPaths paths{base + "_original.pgm", base + "_perturbation.pgm", base + "_perturbed.pgm"};
  write_pgm(to_gray(image, shape), paths.original);
  write_pgm(to_gray(panel, shape), paths.perturbation);
  write_pgm(to_gray(perturbed, shape), paths.perturbed);
  return paths;
}

}  // namespace exal::data_io
