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
#include <cctype>
#include <cmath>
#include <string>

#include "../bytes.hpp"
#include "exal/data_io.hpp"
#include "exal/error.hpp"

namespace exal::data_io {

#if defined(EXAL_HAVE_PNG)
GrayImage decode_png(std::span<const std::uint8_t> bytes, const std::string& origin);
#endif

namespace {

class Tokenizer {
 public:
  Tokenizer(std::span<const std::uint8_t> bytes, const std::string& origin) : bytes_(bytes), origin_(origin) {}

  unsigned long number() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) fail("expected a number");
    unsigned long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > 1'000'000'000UL) fail("number out of range");
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

  [[noreturn]] void fail(const std::string& why) const {
    throw DataError("cannot decode '" + origin_ + "': " + why);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::string origin_;
  std::size_t pos_ = 0;
};

std::uint8_t rescale(unsigned long v, unsigned long maxval) {
  if (maxval == 255) return static_cast<std::uint8_t>(v);
  return static_cast<std::uint8_t>(std::lround(static_cast<double>(v) * 255.0 / static_cast<double>(maxval)));
}

std::uint8_t luma(double r, double g, double b) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(0.299 * r + 0.587 * g + 0.114 * b), 0L, 255L));
}

}  // namespace

GrayImage decode_netpbm(std::span<const std::uint8_t> bytes, const std::string& origin) {
  if (bytes.size() < 2 || bytes[0] != 'P') throw DataError("cannot decode '" + origin + "': not a netpbm file");
  const char kind = static_cast<char>(bytes[1]);
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
    throw DataError("cannot decode '" + origin + "': unsupported netpbm type P" + std::string(1, kind));
  }
  Tokenizer tok(bytes, origin);
  tok.advance(2);
  const unsigned long width = tok.number();
  const unsigned long height = tok.number();
  const unsigned long maxval = tok.number();
  if (width == 0 || height == 0) tok.fail("zero image dimension");
  if (maxval == 0 || maxval > 65535) tok.fail("maxval out of range");

  const bool color = kind == '3' || kind == '6';
  const std::size_t channels = color ? 3 : 1;
  const std::size_t samples = width * height * channels;
  std::vector<unsigned long> raw(samples);

  if (kind == '2' || kind == '3') {
    for (auto& s : raw) {
      s = tok.number();
      if (s > maxval) tok.fail("sample exceeds maxval");
    }
  } else {
    tok.advance(1);  // single whitespace byte after maxval
    const std::size_t bps = maxval > 255 ? 2 : 1;
    if (bytes.size() < tok.pos() + samples * bps) tok.fail("truncated pixel data");
    const std::uint8_t* p = bytes.data() + tok.pos();
    for (std::size_t i = 0; i < samples; ++i) {
      raw[i] = bps == 2 ? (static_cast<unsigned long>(p[2 * i]) << 8 | p[2 * i + 1]) : p[i];
      if (raw[i] > maxval) tok.fail("sample exceeds maxval");
    }
  }

  GrayImage out;
  out.width = static_cast<int>(width);
  out.height = static_cast<int>(height);
  out.pixels.resize(width * height);
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    if (color) {
      out.pixels[i] = luma(rescale(raw[3 * i], maxval), rescale(raw[3 * i + 1], maxval),
                           rescale(raw[3 * i + 2], maxval));
    } else {
      out.pixels[i] = rescale(raw[i], maxval);
    }
  }
  return out;
}

GrayImage decode_image(const std::filesystem::path& path) {
  const auto bytes = detail::read_file(path);
  if (bytes.size() >= 2 && bytes[0] == 'P') return decode_netpbm(bytes, path.string());
  static constexpr std::uint8_t kPngSignature[] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  if (bytes.size() >= 8 && std::equal(std::begin(kPngSignature), std::end(kPngSignature), bytes.begin())) {
#if defined(EXAL_HAVE_PNG)
    return decode_png(bytes, path.string());
#else
    throw DataError("cannot decode '" + path.string() + "': built without PNG support");
#endif
  }
  throw DataError("cannot decode '" + path.string() + "': unrecognized image format");
}

GrayImage resize_bilinear(const GrayImage& in, int width, int height) {
  if (width <= 0 || height <= 0) throw ContractViolation("resize: target size must be positive");
  if (in.width == width && in.height == height) return in;
  GrayImage out;
  out.width = width;
  out.height = height;
  out.pixels.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  const double sx = static_cast<double>(in.width) / width;
  const double sy = static_cast<double>(in.height) / height;
  const auto at = [&](int r, int c) {
    return static_cast<double>(in.pixels[static_cast<std::size_t>(r) * static_cast<std::size_t>(in.width) +
                                         static_cast<std::size_t>(c)]);
  };
  for (int r = 0; r < height; ++r) {
    const double fy = std::clamp((r + 0.5) * sy - 0.5, 0.0, static_cast<double>(in.height - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, in.height - 1);
    const double wy = fy - y0;
    for (int c = 0; c < width; ++c) {
      const double fx = std::clamp((c + 0.5) * sx - 0.5, 0.0, static_cast<double>(in.width - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, in.width - 1);
      const double wx = fx - x0;
      const double top = at(y0, x0) * (1.0 - wx) + at(y0, x1) * wx;
      const double bottom = at(y1, x0) * (1.0 - wx) + at(y1, x1) * wx;
      const double v = top * (1.0 - wy) + bottom * wy;
      out.pixels[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) + static_cast<std::size_t>(c)] =
          static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return out;
}

void write_pgm(const GrayImage& image, const std::filesystem::path& path) {
  const std::string header =
      "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> bytes(header.begin(), header.end());
  bytes.insert(bytes.end(), image.pixels.begin(), image.pixels.end());
  detail::write_file(path, bytes);
}

}  // namespace exal::data_io
