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

#include "exal/error.hpp"
#include "exal/learner.hpp"
#include "exal/rng.hpp"
#include "exal/simd/kernels.hpp"

namespace exal::learner {
namespace {

std::string dims_to_string(const std::vector<std::uint32_t>& dims) {
  std::string out = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(dims[i]);
  }
  return out + "]";
}

}  // namespace

Cnn::Cnn(ImageShape shape, std::uint64_t seed) : shape_(shape) {
  if (shape.height < kMinSide || shape.width < kMinSide) {
    throw ConfigError("cnn: image shape " + std::to_string(shape.height) + "x" +
                      std::to_string(shape.width) + " is below the " + std::to_string(kMinSide) + "x" +
                      std::to_string(kMinSide) + " minimum");
  }
  params_.assign(dense_bias_offset() + kClasses, 0.0);

  Rng rng(seed);
  const double conv_limit = std::sqrt(6.0 / (kKernel * kKernel));
  for (std::size_t i = conv_weight_offset(); i < conv_bias_offset(); ++i) {
    params_[i] = rng.uniform(-conv_limit, conv_limit);
  }
  const double dense_limit = std::sqrt(6.0 / static_cast<double>(flat_features()));
  for (std::size_t i = dense_weight_offset(); i < dense_bias_offset(); ++i) {
    params_[i] = rng.uniform(-dense_limit, dense_limit);
  }
}

ModelWeights Cnn::get_weights() const {
  const auto slice = [&](std::size_t begin, std::size_t end) {
    return std::vector<double>(params_.begin() + static_cast<std::ptrdiff_t>(begin),
                               params_.begin() + static_cast<std::ptrdiff_t>(end));
  };
  const auto f = static_cast<std::uint32_t>(kFilters);
  const auto k = static_cast<std::uint32_t>(kKernel);
  const auto c = static_cast<std::uint32_t>(kClasses);
  ModelWeights w;
  w.tensors.push_back({"conv.weight", {f, 1, k, k}, slice(conv_weight_offset(), conv_bias_offset())});
  w.tensors.push_back({"conv.bias", {f}, slice(conv_bias_offset(), dense_weight_offset())});
  w.tensors.push_back({"dense.weight",
                       {c, static_cast<std::uint32_t>(flat_features())},
                       slice(dense_weight_offset(), dense_bias_offset())});
  w.tensors.push_back({"dense.bias", {c}, slice(dense_bias_offset(), params_.size())});
  return w;
}

void Cnn::set_weights(const ModelWeights& weights) {
  const ModelWeights expected = get_weights();
  if (weights.tensors.size() != expected.tensors.size()) {
    throw ContractViolation("set_weights: expected " + std::to_string(expected.tensors.size()) +
                            " tensors, got " + std::to_string(weights.tensors.size()));
  }
  for (std::size_t i = 0; i < expected.tensors.size(); ++i) {
    const Tensor& want = expected.tensors[i];
    const Tensor& got = weights.tensors[i];
    if (got.name != want.name || got.dims != want.dims || got.values.size() != want.values.size()) {
      throw ContractViolation("set_weights: tensor " + std::to_string(i) + " is '" + got.name + "' " +
                              dims_to_string(got.dims) + ", model expects '" + want.name + "' " +
                              dims_to_string(want.dims));
    }
  }
  std::size_t pos = 0;
  for (const Tensor& t : weights.tensors) {
    std::copy(t.values.begin(), t.values.end(), params_.begin() + static_cast<std::ptrdiff_t>(pos));
    pos += t.values.size();
  }
}

Workspace Cnn::make_workspace() const {
  const auto h = static_cast<std::size_t>(shape_.height);
  const auto w = static_cast<std::size_t>(shape_.width);
  Workspace ws;
  ws.padded.assign((h + 2) * (w + 2), 0.0);
  ws.conv.assign(kFilters * h * w, 0.0);
  ws.pooled.assign(flat_features(), 0.0);
  ws.argmax.assign(flat_features(), 0);
  ws.dpooled.assign(flat_features(), 0.0);
  ws.dconv.assign(kFilters * h * w, 0.0);
  return ws;
}

void Cnn::forward(std::span<const double> image, std::span<const double> offset, Workspace& ws,
                  std::array<double, kClasses>& out) const {
  if (image.size() != input_size()) {
    throw ContractViolation("cnn: image has " + std::to_string(image.size()) + " values, expected " +
                            std::to_string(input_size()));
  }
  if (!offset.empty() && offset.size() != input_size()) {
    throw ContractViolation("cnn: offset has " + std::to_string(offset.size()) + " values, expected " +
                            std::to_string(input_size()));
  }
  if (ws.conv.size() != kFilters * input_size()) ws = make_workspace();

  const auto& k = simd::active();
  const auto h = static_cast<std::size_t>(shape_.height);
  const auto w = static_cast<std::size_t>(shape_.width);
  const std::size_t stride = w + 2;

  // The border of ws.padded stays zero; only the interior is rewritten.
  for (std::size_t r = 0; r < h; ++r) {
    double* dst = ws.padded.data() + (r + 1) * stride + 1;
    const double* src = image.data() + r * w;
    if (offset.empty()) {
      std::copy(src, src + w, dst);
    } else {
      k.add(src, offset.data() + r * w, dst, w);
    }
  }

  const double* conv_w = params_.data() + conv_weight_offset();
  const double* conv_b = params_.data() + conv_bias_offset();
  for (std::size_t f = 0; f < kFilters; ++f) {
    const double* taps = conv_w + f * kKernel * kKernel;
    for (std::size_t r = 0; r < h; ++r) {
      double* row = ws.conv.data() + (f * h + r) * w;
      std::fill(row, row + w, conv_b[f]);
      for (std::size_t dr = 0; dr < kKernel; ++dr) {
        const double* src = ws.padded.data() + (r + dr) * stride;
        for (std::size_t dc = 0; dc < kKernel; ++dc) k.axpy(taps[dr * kKernel + dc], src + dc, row, w);
      }
    }
  }
  k.relu(ws.conv.data(), ws.conv.size());

  const std::size_t ph = pooled_height();
  const std::size_t pw = pooled_width();
  for (std::size_t f = 0; f < kFilters; ++f) {
    for (std::size_t pr = 0; pr < ph; ++pr) {
      for (std::size_t pc = 0; pc < pw; ++pc) {
        std::size_t best = (f * h + 2 * pr) * w + 2 * pc;
        for (std::size_t cand : {best + 1, best + w, best + w + 1}) {
          if (ws.conv[cand] > ws.conv[best]) best = cand;
        }
        const std::size_t j = (f * ph + pr) * pw + pc;
        ws.pooled[j] = ws.conv[best];
        ws.argmax[j] = static_cast<std::uint32_t>(best);
      }
    }
  }

  const std::size_t nf = flat_features();
  const double* dense_w = params_.data() + dense_weight_offset();
  const double* dense_b = params_.data() + dense_bias_offset();
  for (std::size_t c = 0; c < kClasses; ++c) {
    out[c] = dense_b[c] + k.dot(dense_w + c * nf, ws.pooled.data(), nf);
  }
}

void Cnn::backward(const Workspace& ws, const std::array<double, kClasses>& dlogits,
                   std::span<double> grad, Workspace& scratch) const {
  const auto& k = simd::active();
  const auto h = static_cast<std::size_t>(shape_.height);
  const auto w = static_cast<std::size_t>(shape_.width);
  const std::size_t stride = w + 2;
  const std::size_t nf = flat_features();
  const double* dense_w = params_.data() + dense_weight_offset();

  std::fill(scratch.dpooled.begin(), scratch.dpooled.end(), 0.0);
  for (std::size_t c = 0; c < kClasses; ++c) {
    k.axpy(dlogits[c], ws.pooled.data(), grad.data() + dense_weight_offset() + c * nf, nf);
    grad[dense_bias_offset() + c] += dlogits[c];
    k.axpy(dlogits[c], dense_w + c * nf, scratch.dpooled.data(), nf);
  }

  // Max-pool routes to the winning cell; ReLU passes gradient only where the output is positive.
  std::fill(scratch.dconv.begin(), scratch.dconv.end(), 0.0);
  for (std::size_t j = 0; j < nf; ++j) {
    const std::uint32_t src = ws.argmax[j];
    if (ws.conv[src] > 0.0) scratch.dconv[src] += scratch.dpooled[j];
  }

  double* gw = grad.data() + conv_weight_offset();
  double* gb = grad.data() + conv_bias_offset();
  for (std::size_t f = 0; f < kFilters; ++f) {
    for (std::size_t r = 0; r < h; ++r) {
      const double* drow = scratch.dconv.data() + (f * h + r) * w;
      double row_sum = 0.0;
      for (std::size_t c = 0; c < w; ++c) row_sum += drow[c];
      if (row_sum == 0.0 && std::all_of(drow, drow + w, [](double v) { return v == 0.0; })) continue;
      gb[f] += row_sum;
      for (std::size_t dr = 0; dr < kKernel; ++dr) {
        const double* src = ws.padded.data() + (r + dr) * stride;
        for (std::size_t dc = 0; dc < kKernel; ++dc) {
          gw[f * kKernel * kKernel + dr * kKernel + dc] += k.dot(drow, src + dc, w);
        }
      }
    }
  }
}

std::array<double, Cnn::kClasses> Cnn::logits(std::span<const double> image, Workspace& ws,
                                              std::span<const double> offset) const {
  std::array<double, kClasses> out{};
  forward(image, offset, ws, out);
  return out;
}

std::uint8_t Cnn::predict(std::span<const double> image, Workspace& ws,
                          std::span<const double> offset) const {
  const auto z = logits(image, ws, offset);
  return z[1] > z[0] ? 1 : 0;
}

LossAndGradients Cnn::loss_and_gradients(const Dataset& data, std::span<const std::size_t> rows) const {
  if (rows.empty()) throw ContractViolation("loss_and_gradients: empty batch");
  if (data.shape() != shape_) throw ContractViolation("loss_and_gradients: dataset shape differs from model");
  LossAndGradients out;
  out.gradients.assign(params_.size(), 0.0);
  Workspace ws = make_workspace();
  Workspace scratch = make_workspace();
  const double inv_n = 1.0 / static_cast<double>(rows.size());
  double total = 0.0;
  for (std::size_t row : rows) {
    std::array<double, kClasses> z{};
    forward(data.row(row), {}, ws, z);
    const double zmax = std::max(z[0], z[1]);
    const double e0 = std::exp(z[0] - zmax);
    const double e1 = std::exp(z[1] - zmax);
    const double sum = e0 + e1;
    const std::size_t y = data.label(row);
    total += std::log(sum) + zmax - z[y];
    std::array<double, kClasses> dz{e0 / sum, e1 / sum};
    dz[y] -= 1.0;
    dz[0] *= inv_n;
    dz[1] *= inv_n;
    backward(ws, dz, out.gradients, scratch);
  }
  out.loss = total * inv_n;
  return out;
}

LossAndGradients Cnn::loss_and_gradients(const Dataset& data) const {
  std::vector<std::size_t> rows(data.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return loss_and_gradients(data, rows);
}

}  // namespace exal::learner
