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

#include <cstdio>
#include <string>

#include "../bytes.hpp"
#include "exal/error.hpp"
#include "exal/game.hpp"

namespace exal::game {
namespace {

constexpr char kMagic[] = {'E', 'X', 'A', 'L', 'P', '1'};
constexpr std::size_t kHeaderSize = 16;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string_view hypothesis_label(bool satisfied) { return satisfied ? "Satisfied" : "Not Satisfied"; }

std::string results_csv(std::span<const ResultRow> rows) {
  std::string out =
      "labels_pos,labels_neg,scale,f1_original,f1_manipulated,f1_secure,hypothesis,seed,runtime_seconds\n";
  for (const ResultRow& row : rows) {
    out += row.positive + "," + row.negative + "," + detail::format_double(row.scale) + "," +
           fixed(row.result.f1_original, 6) + "," + fixed(row.result.f1_manipulated, 6) + "," +
           fixed(row.result.f1_secure, 6) + "," + std::string(hypothesis_label(row.result.hypothesis_satisfied)) +
           "," + std::to_string(row.seed) + "," + fixed(row.runtime_seconds, 3) + "\n";
  }
  return out;
}

void write_results_csv(std::span<const ResultRow> rows, const std::filesystem::path& path) {
  detail::write_text(path, results_csv(rows));
}

std::vector<std::uint8_t> encode_perturbation(std::span<const double> a) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  detail::put_u32_le(out, static_cast<std::uint32_t>(a.size()));
  out.resize(kHeaderSize, 0);
  out.reserve(kHeaderSize + 8 * a.size());
  for (double v : a) detail::put_f64_le(out, v);
  return out;
}

std::vector<double> decode_perturbation(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) {
    throw ParseError(ParseErrorKind::kTruncated, "perturbation: header truncated");
  }
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw ParseError(ParseErrorKind::kBadMagic, "perturbation: bad magic (expected EXALP1)");
  }
  const std::uint32_t m = detail::get_u32_le(bytes.data() + 6);
  if (bytes.size() != kHeaderSize + 8 * static_cast<std::size_t>(m)) {
    throw ParseError(ParseErrorKind::kTruncated, "perturbation: header says " + std::to_string(m) +
                                                     " values but payload has " +
                                                     std::to_string(bytes.size() - kHeaderSize) + " bytes");
  }
  std::vector<double> a(m);
  for (std::size_t i = 0; i < m; ++i) a[i] = detail::get_f64_le(bytes.data() + kHeaderSize + 8 * i);
  return a;
}

void write_perturbation(std::span<const double> a, const std::filesystem::path& path) {
  detail::write_file(path, encode_perturbation(a));
}

std::vector<double> read_perturbation(const std::filesystem::path& path) {
  return decode_perturbation(detail::read_file(path));
}

}  // namespace exal::game
