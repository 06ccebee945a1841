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
#include <string>

#include "exal/error.hpp"
#include "exal/learner.hpp"
#include "exal/simd/kernels.hpp"

namespace exal::learner {

Dataset::Dataset(ImageShape shape, std::vector<double> pixels, std::vector<std::uint8_t> labels)
    : shape_(shape), pixels_(std::move(pixels)), labels_(std::move(labels)) {
  if (shape_.height <= 0 || shape_.width <= 0) throw ContractViolation("dataset: non-positive image shape");
  if (pixels_.size() != labels_.size() * shape_.pixels()) {
    throw ContractViolation("dataset: " + std::to_string(pixels_.size()) + " pixel values do not form " +
                            std::to_string(labels_.size()) + " images of " +
                            std::to_string(shape_.pixels()) + " pixels");
  }
  if (std::any_of(labels_.begin(), labels_.end(), [](std::uint8_t y) { return y > 1; })) {
    throw ContractViolation("dataset: labels must be 0 or 1");
  }
}

std::size_t Dataset::count_label(std::uint8_t label) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

Dataset Dataset::perturbed(std::span<const double> delta) const {
  if (delta.size() != features()) {
    throw ContractViolation("perturbation length " + std::to_string(delta.size()) +
                            " does not match image size " + std::to_string(features()));
  }
  std::vector<double> out(pixels_.size());
  const auto& k = simd::active();
  for (std::size_t i = 0; i < size(); ++i) {
    k.add(pixels_.data() + i * features(), delta.data(), out.data() + i * features(), features());
  }
  return Dataset(shape_, std::move(out), labels_);
}

}  // namespace exal::learner
