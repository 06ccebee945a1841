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
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "exal/data_io.hpp"
#include "exal/error.hpp"
#include "exal/rng.hpp"

namespace exal::data_io {
namespace {

std::size_t train_count(std::size_t n, double fraction) {
  auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  // Keep both sides non-empty for every class with at least two samples.
  return std::clamp<std::size_t>(k, 1, n - 1);
}

// Rows of `pixels` (each `m` values) selected by `rows`, in that order.
learner::Dataset gather(learner::ImageShape shape, const std::vector<double>& pixels,
                        const std::vector<std::uint8_t>& labels, const std::vector<std::size_t>& rows) {
  const std::size_t m = shape.pixels();
  std::vector<double> out_pixels;
  out_pixels.reserve(rows.size() * m);
  std::vector<std::uint8_t> out_labels;
  out_labels.reserve(rows.size());
  for (std::size_t r : rows) {
    out_pixels.insert(out_pixels.end(), pixels.begin() + static_cast<std::ptrdiff_t>(r * m),
                      pixels.begin() + static_cast<std::ptrdiff_t>((r + 1) * m));
    out_labels.push_back(labels[r]);
  }
  return learner::Dataset(shape, std::move(out_pixels), std::move(out_labels));
}

// Per-class stratified split of row indices, each side shuffled.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratify(
    const std::array<std::vector<std::size_t>, 2>& by_class, double fraction, Rng& rng) {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
  for (const auto& rows : by_class) {
    const std::size_t k = train_count(rows.size(), fraction);
    train.insert(train.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(k));
    test.insert(test.end(), rows.begin() + static_cast<std::ptrdiff_t>(k), rows.end());
  }
  rng.shuffle(train.begin(), train.end());
  rng.shuffle(test.begin(), test.end());
  return {std::move(train), std::move(test)};
}

}  // namespace

void PairSpec::validate() const {
  if (positive == negative) throw ConfigError("pair labels must differ (got '" + positive + "' twice)");
  if (samples_per_class < 2) throw ConfigError("data.samples_per_class must be >= 2");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ConfigError("data.train_fraction must lie in (0, 1)");
}

TrainTestSplit make_pair_dataset(const RawLabeledImages& raw, const PairSpec& spec, std::uint64_t seed) {
  spec.validate();
  const std::uint32_t pos = raw.resolve_label(spec.positive);
  const std::uint32_t neg = raw.resolve_label(spec.negative);

  // Index 0 holds negatives (label 0), index 1 positives (label 1).
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw.labels[i] == pos) by_class[1].push_back(i);
    if (raw.labels[i] == neg) by_class[0].push_back(i);
  }
  for (int c = 0; c < 2; ++c) {
    const std::string& name = c == 1 ? spec.positive : spec.negative;
    if (by_class[c].empty()) throw ConfigError("unknown label '" + name + "': no samples in dataset");
    if (by_class[c].size() < 2) throw ConfigError("label '" + name + "' has fewer than 2 samples");
  }

  Rng rng(seed);
  for (auto& rows : by_class) {
    rng.shuffle(rows.begin(), rows.end());
    if (rows.size() > spec.samples_per_class) rows.resize(spec.samples_per_class);
  }

  // Normalize only the selected rows.
  std::vector<std::size_t> selected;
  for (const auto& rows : by_class) selected.insert(selected.end(), rows.begin(), rows.end());
  const std::size_t m = raw.shape.pixels();
  std::vector<double> compact(selected.size() * m);
  std::vector<std::uint8_t> labels(selected.size());
  std::array<std::vector<std::size_t>, 2> compact_by_class;
  for (std::size_t k = 0; k < selected.size(); ++k) {
    const auto img = raw.image(selected[k]);
    for (std::size_t j = 0; j < m; ++j) compact[k * m + j] = static_cast<double>(img[j]) / 255.0;
    labels[k] = raw.labels[selected[k]] == pos ? 1 : 0;
    compact_by_class[labels[k]].push_back(k);
  }

  auto [train_rows, test_rows] = stratify(compact_by_class, spec.train_fraction, rng);
  return {gather(raw.shape, compact, labels, train_rows), gather(raw.shape, compact, labels, test_rows)};
}

TrainTestSplit split_dataset(const learner::Dataset& data, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ConfigError("split fraction must lie in (0, 1)");
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < data.size(); ++i) by_class[data.label(i)].push_back(i);
  if (by_class[0].size() < 2 || by_class[1].size() < 2) {
    throw ConfigError("split: each class needs at least 2 samples");
  }
  Rng rng(seed);
  for (auto& rows : by_class) rng.shuffle(rows.begin(), rows.end());
  auto [train_rows, test_rows] = stratify(by_class, train_fraction, rng);
  const std::vector<double> pixels(data.pixels().begin(), data.pixels().end());
  const std::vector<std::uint8_t> labels(data.labels().begin(), data.labels().end());
  return {gather(data.shape(), pixels, labels, train_rows), gather(data.shape(), pixels, labels, test_rows)};
}

}  // namespace exal::data_io
