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
#include <charconv>
#include <sstream>

#include "../bytes.hpp"
#include "exal/data_io.hpp"
#include "exal/error.hpp"

namespace exal::data_io {
namespace {

std::string hex32(std::uint32_t v) {
  std::ostringstream os;
  os << "0x" << std::hex;
  os.width(8);
  os.fill('0');
  os << v;
  return os.str();
}

void need(std::span<const std::uint8_t> bytes, std::size_t n, const char* which) {
  if (bytes.size() < n) {
    throw ParseError(ParseErrorKind::kTruncated, std::string("idx ") + which + " file truncated: need " +
                                                     std::to_string(n) + " bytes, have " +
                                                     std::to_string(bytes.size()));
  }
}

}  // namespace

std::uint32_t RawLabeledImages::resolve_label(const std::string& name) const {
  for (std::size_t i = 0; i < class_names.size(); ++i) {
    if (class_names[i] == name) return static_cast<std::uint32_t>(i);
  }
  if (class_names.empty()) {
    std::uint32_t value = 0;
    const auto res = std::from_chars(name.data(), name.data() + name.size(), value);
    if (res.ec == std::errc() && res.ptr == name.data() + name.size()) return value;
  }
  throw ConfigError("unknown label '" + name + "'");
}

std::string RawLabeledImages::label_name(std::uint32_t label) const {
  if (label < class_names.size()) return class_names[label];
  return std::to_string(label);
}

RawLabeledImages parse_idx(std::span<const std::uint8_t> image_bytes, std::span<const std::uint8_t> label_bytes) {
  need(image_bytes, 4, "images");
  const std::uint32_t img_magic = detail::get_u32_be(image_bytes.data());
  if (img_magic != kIdxImagesMagic) {
    throw ParseError(ParseErrorKind::kBadMagic, "idx images: bad magic " + hex32(img_magic) + " (expected " +
                                                    hex32(kIdxImagesMagic) + ")");
  }
  need(label_bytes, 4, "labels");
  const std::uint32_t lbl_magic = detail::get_u32_be(label_bytes.data());
  if (lbl_magic != kIdxLabelsMagic) {
    throw ParseError(ParseErrorKind::kBadMagic, "idx labels: bad magic " + hex32(lbl_magic) + " (expected " +
                                                    hex32(kIdxLabelsMagic) + ")");
  }

  need(image_bytes, 16, "images");
  const std::uint32_t n = detail::get_u32_be(image_bytes.data() + 4);
  const std::uint32_t h = detail::get_u32_be(image_bytes.data() + 8);
  const std::uint32_t w = detail::get_u32_be(image_bytes.data() + 12);
  need(label_bytes, 8, "labels");
  const std::uint32_t n_labels = detail::get_u32_be(label_bytes.data() + 4);
  if (n != n_labels) {
    throw ParseError(ParseErrorKind::kCountMismatch, "idx: " + std::to_string(n) + " images but " +
                                                         std::to_string(n_labels) + " labels");
  }
  if (h == 0 || w == 0) throw ParseError(ParseErrorKind::kMalformed, "idx images: zero image dimension");

  const std::size_t pixel_count = static_cast<std::size_t>(n) * h * w;
  need(image_bytes, 16 + pixel_count, "images");
  need(label_bytes, 8 + static_cast<std::size_t>(n), "labels");

  RawLabeledImages raw;
  raw.shape = {static_cast<int>(h), static_cast<int>(w)};
  raw.pixels.assign(image_bytes.begin() + 16, image_bytes.begin() + 16 + static_cast<std::ptrdiff_t>(pixel_count));
  raw.labels.assign(label_bytes.begin() + 8, label_bytes.begin() + 8 + n);
  return raw;
}

RawLabeledImages load_idx(const std::filesystem::path& images, const std::filesystem::path& labels) {
  const auto image_bytes = detail::read_file(images);
  const auto label_bytes = detail::read_file(labels);
  try {
    return parse_idx(image_bytes, label_bytes);
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), std::string(e.what()) + " [" + images.string() + ", " + labels.string() + "]");
  }
}

std::vector<std::uint8_t> encode_idx_images(const RawLabeledImages& raw) {
  std::vector<std::uint8_t> out;
  out.reserve(16 + raw.pixels.size());
  detail::put_u32_be(out, kIdxImagesMagic);
  detail::put_u32_be(out, static_cast<std::uint32_t>(raw.size()));
  detail::put_u32_be(out, static_cast<std::uint32_t>(raw.shape.height));
  detail::put_u32_be(out, static_cast<std::uint32_t>(raw.shape.width));
  out.insert(out.end(), raw.pixels.begin(), raw.pixels.end());
  return out;
}

std::vector<std::uint8_t> encode_idx_labels(const RawLabeledImages& raw) {
  std::vector<std::uint8_t> out;
  out.reserve(8 + raw.labels.size());
  detail::put_u32_be(out, kIdxLabelsMagic);
  detail::put_u32_be(out, static_cast<std::uint32_t>(raw.size()));
  for (std::uint32_t y : raw.labels) {
    if (y > 255) throw ContractViolation("idx: label " + std::to_string(y) + " does not fit in one byte");
    out.push_back(static_cast<std::uint8_t>(y));
  }
  return out;
}

void write_idx(const RawLabeledImages& raw, const std::filesystem::path& images,
               const std::filesystem::path& labels) {
  detail::write_file(images, encode_idx_images(raw));
  detail::write_file(labels, encode_idx_labels(raw));
}

}  // namespace exal::data_io
