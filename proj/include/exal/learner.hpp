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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace exal::learner {

struct ImageShape {
  int height = 0;
  int width = 0;

  std::size_t pixels() const noexcept {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  }
  friend bool operator==(const ImageShape&, const ImageShape&) = default;
};

/// n images of shape (H, W) stored row-major as an n x (H*W) matrix, with
/// binary labels (1 = positive class).
class Dataset {
 public:
  Dataset() = default;
  /// Throws ContractViolation unless pixels.size() == labels.size() * H * W and labels are 0/1.
  Dataset(ImageShape shape, std::vector<double> pixels, std::vector<std::uint8_t> labels);

  ImageShape shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t features() const noexcept { return shape_.pixels(); }
  bool empty() const noexcept { return labels_.empty(); }

  std::span<const double> row(std::size_t i) const {
    return {pixels_.data() + i * features(), features()};
  }
  std::uint8_t label(std::size_t i) const { return labels_[i]; }

  std::span<const double> pixels() const noexcept { return pixels_; }
  std::span<const std::uint8_t> labels() const noexcept { return labels_; }

  std::size_t count_label(std::uint8_t label) const;

  /// Copy with `delta` (length H*W) added to every row. No clamping.
  Dataset perturbed(std::span<const double> delta) const;

 private:
  ImageShape shape_{};
  std::vector<double> pixels_;
  std::vector<std::uint8_t> labels_;
};

struct Tensor {
  std::string name;
  std::vector<std::uint32_t> dims;
  std::vector<double> values;

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

/// Ordered snapshot of all trainable parameters.
struct ModelWeights {
  std::vector<Tensor> tensors;

  friend bool operator==(const ModelWeights&, const ModelWeights&) = default;
};

struct TrainConfig {
  int epochs = 5;
  int batch_size = 32;
  double learning_rate = 0.01;
  double momentum = 0.9;
  std::uint64_t seed = 0;

  void validate() const;
};

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Positive-class metrics. Ratios with a zero denominator are reported as 0.
struct Metrics {
  ConfusionCounts counts;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

Metrics metrics_from_counts(const ConfusionCounts& counts);

/// Tallies labels against predictions (both 0/1).
Metrics metrics_from_predictions(std::span<const std::uint8_t> labels,
                                 std::span<const std::uint8_t> predictions);

/// Scratch buffers for one forward/backward pass. Not shareable across threads.
struct Workspace {
  std::vector<double> padded;    // (H+2) x (W+2) input with a zero border
  std::vector<double> conv;      // filters x H x W, post-ReLU
  std::vector<double> pooled;    // filters x H/2 x W/2
  std::vector<std::uint32_t> argmax;  // winning conv index per pooled cell
  std::vector<double> dpooled;
  std::vector<double> dconv;
};

struct LossAndGradients {
  double loss = 0.0;
  /// Same layout as Cnn::parameters().
  std::vector<double> gradients;
};

/// conv 3x3 (8 filters, stride 1, zero "same" padding) -> ReLU -> 2x2 max-pool
/// -> flatten -> dense to 2 logits -> softmax.
///
/// Parameters live in one flat buffer in this order:
///   conv.weight [8, 1, 3, 3], conv.bias [8], dense.weight [2, 8 * H/2 * W/2], dense.bias [2]
class Cnn {
 public:
  static constexpr int kFilters = 8;
  static constexpr int kKernel = 3;
  static constexpr int kClasses = 2;
  static constexpr int kMinSide = 8;

  /// He-uniform weights (limit sqrt(6 / fan_in)) and zero biases drawn from `seed`.
  /// Throws ConfigError when H or W is below kMinSide.
  Cnn(ImageShape shape, std::uint64_t seed);

  ImageShape shape() const noexcept { return shape_; }
  std::size_t input_size() const noexcept { return shape_.pixels(); }
  std::size_t parameter_count() const noexcept { return params_.size(); }

  std::span<double> parameters() noexcept { return params_; }
  std::span<const double> parameters() const noexcept { return params_; }

  ModelWeights get_weights() const;
  /// Throws ContractViolation when names or shapes differ from this model's.
  void set_weights(const ModelWeights& weights);

  Workspace make_workspace() const;

  /// Raw class scores for one image. `offset`, when non-empty, is added to the
  /// image first (same length as the image).
  std::array<double, kClasses> logits(std::span<const double> image, Workspace& ws,
                                      std::span<const double> offset = {}) const;

  /// argmax over the logits; an exact tie goes to class 0.
  std::uint8_t predict(std::span<const double> image, Workspace& ws,
                       std::span<const double> offset = {}) const;

  /// Mean softmax cross-entropy over the selected rows and its exact gradient.
  LossAndGradients loss_and_gradients(const Dataset& data, std::span<const std::size_t> rows) const;
  LossAndGradients loss_and_gradients(const Dataset& data) const;

 private:
  std::size_t pooled_height() const noexcept { return static_cast<std::size_t>(shape_.height / 2); }
  std::size_t pooled_width() const noexcept { return static_cast<std::size_t>(shape_.width / 2); }
  std::size_t flat_features() const noexcept { return kFilters * pooled_height() * pooled_width(); }

  std::size_t conv_weight_offset() const noexcept { return 0; }
  std::size_t conv_bias_offset() const noexcept { return kFilters * kKernel * kKernel; }
  std::size_t dense_weight_offset() const noexcept { return conv_bias_offset() + kFilters; }
  std::size_t dense_bias_offset() const noexcept {
    return dense_weight_offset() + kClasses * flat_features();
  }

  void forward(std::span<const double> image, std::span<const double> offset, Workspace& ws,
               std::array<double, kClasses>& out) const;
  void backward(const Workspace& ws, const std::array<double, kClasses>& dlogits,
                std::span<double> grad, Workspace& scratch) const;

  ImageShape shape_;
  std::vector<double> params_;
};

struct TrainReport {
  ModelWeights weights;
  /// Mean mini-batch loss per epoch.
  std::vector<double> epoch_loss;
};

/// Mini-batch SGD with classical momentum on the mean cross-entropy.
/// Throws ConfigError on an empty or single-class dataset or invalid config.
TrainReport train(Cnn& model, const Dataset& data, const TrainConfig& config);

/// Positive-class metrics of argmax predictions on `data`, optionally with
/// `offset` added to every image.
Metrics evaluate(const Cnn& model, const Dataset& data, std::span<const double> offset = {});

std::vector<std::uint8_t> predict_all(const Cnn& model, const Dataset& data,
                                      std::span<const double> offset = {});

// Binary weight container: "EXALW1", u32 tensor count, then per tensor
// u32 name length, name bytes, u32 rank, u32 dims..., f64 values. All little-endian.
void write_weights(const ModelWeights& weights, const std::filesystem::path& path);
ModelWeights read_weights(const std::filesystem::path& path);
std::vector<std::uint8_t> encode_weights(const ModelWeights& weights);
ModelWeights decode_weights(std::span<const std::uint8_t> bytes);

/// "epoch,loss" CSV with 1-based epochs.
void write_loss_csv(std::span<const double> epoch_loss, const std::filesystem::path& path);

}  // namespace exal::learner
