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

#include <string>

#include "../bytes.hpp"
#include "exal/error.hpp"
#include "exal/learner.hpp"

namespace exal::learner {
namespace {

constexpr char kMagic[] = {'E', 'X', 'A', 'L', 'W', '1'};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  const std::uint8_t* take(std::size_t n) {
    if (bytes_.size() - pos_ < n) {
      throw ParseError(ParseErrorKind::kTruncated, "weights: truncated at byte " + std::to_string(pos_));
    }
    const std::uint8_t* p = bytes_.data() + pos_;
    pos_ += n;
    return p;
  }
  std::uint32_t u32() { return detail::get_u32_le(take(4)); }
  double f64() { return detail::get_f64_le(take(8)); }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_weights(const ModelWeights& weights) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  detail::put_u32_le(out, static_cast<std::uint32_t>(weights.tensors.size()));
  for (const Tensor& t : weights.tensors) {
    detail::put_u32_le(out, static_cast<std::uint32_t>(t.name.size()));
    out.insert(out.end(), t.name.begin(), t.name.end());
    detail::put_u32_le(out, static_cast<std::uint32_t>(t.dims.size()));
    for (std::uint32_t d : t.dims) detail::put_u32_le(out, d);
    for (double v : t.values) detail::put_f64_le(out, v);
  }
  return out;
}

ModelWeights decode_weights(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  const std::uint8_t* magic = in.take(sizeof(kMagic));
  if (!std::equal(std::begin(kMagic), std::end(kMagic), magic)) {
    throw ParseError(ParseErrorKind::kBadMagic, "weights: bad magic (expected EXALW1)");
  }
  ModelWeights w;
  const std::uint32_t count = in.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    Tensor t;
    const std::uint32_t name_len = in.u32();
    const std::uint8_t* name = in.take(name_len);
    t.name.assign(reinterpret_cast<const char*>(name), name_len);
    const std::uint32_t rank = in.u32();
    std::size_t elements = 1;
    for (std::uint32_t r = 0; r < rank; ++r) {
      t.dims.push_back(in.u32());
      elements *= t.dims.back();
    }
    if (elements > bytes.size() / 8) {
      throw ParseError(ParseErrorKind::kTruncated, "weights: tensor '" + t.name + "' exceeds file size");
    }
    t.values.resize(elements);
    for (double& v : t.values) v = in.f64();
    w.tensors.push_back(std::move(t));
  }
  if (!in.done()) throw ParseError(ParseErrorKind::kMalformed, "weights: trailing bytes after last tensor");
  return w;
}

void write_weights(const ModelWeights& weights, const std::filesystem::path& path) {
  detail::write_file(path, encode_weights(weights));
}

ModelWeights read_weights(const std::filesystem::path& path) { return decode_weights(detail::read_file(path)); }

void write_loss_csv(std::span<const double> epoch_loss, const std::filesystem::path& path) {
  std::string text = "epoch,loss\n";
  for (std::size_t i = 0; i < epoch_loss.size(); ++i) {
    text += std::to_string(i + 1) + "," + detail::format_double(epoch_loss[i]) + "\n";
  }
  detail::write_text(path, text);
}

}  // namespace exal::learner
