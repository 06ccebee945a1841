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

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "exal/learner.hpp"

namespace exal::data_io {

/// n grayscale 8-bit images sharing one shape, with small integer labels.
/// `class_names[label]` names each label when known (directory names, digits).
struct RawLabeledImages {
  learner::ImageShape shape;
  std::vector<std::uint8_t> pixels;  // n * H * W
  std::vector<std::uint32_t> labels;
  std::vector<std::string> class_names;

  std::size_t size() const noexcept { return labels.size(); }
  std::span<const std::uint8_t> image(std::size_t i) const {
    return {pixels.data() + i * shape.pixels(), shape.pixels()};
  }
  /// Label index for a class name, or for a decimal label when no names are set.
  /// Throws ConfigError naming `name` when nothing matches.
  std::uint32_t resolve_label(const std::string& name) const;
  std::string label_name(std::uint32_t label) const;
};

// ---- IDX (big-endian; images magic 0x00000803 dims n,H,W; labels magic 0x00000801 dim n)

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

/// Throws ParseError (kBadMagic, kTruncated, kCountMismatch) or DataError for unreadable files.
RawLabeledImages load_idx(const std::filesystem::path& images, const std::filesystem::path& labels);
RawLabeledImages parse_idx(std::span<const std::uint8_t> image_bytes, std::span<const std::uint8_t> label_bytes);

std::vector<std::uint8_t> encode_idx_images(const RawLabeledImages& raw);
std::vector<std::uint8_t> encode_idx_labels(const RawLabeledImages& raw);
void write_idx(const RawLabeledImages& raw, const std::filesystem::path& images,
               const std::filesystem::path& labels);

// ---- Grayscale images

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major
};

/// Decodes PGM/PPM (P2, P3, P5, P6) and, when built with libpng, PNG.
/// Color input is converted with Rec. 601 luma. Throws DataError naming the path.
GrayImage decode_image(const std::filesystem::path& path);
GrayImage decode_netpbm(std::span<const std::uint8_t> bytes, const std::string& origin);

/// Bilinear resampling with half-pixel centers and edge clamping.
GrayImage resize_bilinear(const GrayImage& in, int width, int height);

void write_pgm(const GrayImage& image, const std::filesystem::path& path);

/// One class per subdirectory of `root`, labelled in the order given. Files are
/// visited in lexicographic order and resized to side x side.
/// Throws DataError naming the directory or file that is missing, empty or undecodable.
RawLabeledImages load_image_dir(const std::filesystem::path& root, const std::vector<std::string>& classes,
                                int side = 32);

// ---- Binary pair datasets

struct PairSpec {
  std::string positive;
  std::string negative;
  std::size_t samples_per_class = 1000;
  double train_fraction = 0.8;

  void validate() const;
};

struct TrainTestSplit {
  learner::Dataset train;
  learner::Dataset test;
};

/// Filters to the two labels (positive -> 1, negative -> 0), subsamples up to
/// samples_per_class per class without replacement, scales by 1/255 and splits
/// each class by train_fraction. Both splits are shuffled. Throws ConfigError
/// for an unknown label or a class with fewer than 2 samples.
TrainTestSplit make_pair_dataset(const RawLabeledImages& raw, const PairSpec& spec, std::uint64_t seed);

/// Stratified split of an existing binary dataset (used for synthetic data).
TrainTestSplit split_dataset(const learner::Dataset& data, double train_fraction, std::uint64_t seed);

struct SyntheticSpec {
  std::size_t per_class = 200;
  learner::ImageShape shape{16, 16};
  /// 0 makes both classes identically distributed; 1 gives well separated templates.
  double separation = 1.0;
  double noise = 0.1;
};

/// Class 0 is noise around a dim flat template, class 1 noise around a brighter
/// template with a centered Gaussian blob. Pixels are clamped to [0, 1].
learner::Dataset make_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

/// Mean image of each class template (noise free), for nearest-template checks.
std::pair<std::vector<double>, std::vector<double>> synthetic_templates(const SyntheticSpec& spec);

// ---- Export

/// Maps [0, 1] to 0..255 with rounding; values outside are clamped.
std::uint8_t to_byte(double v);

/// Min-max normalization to [0, 1]; a constant vector maps to 0.5 everywhere.
std::vector<double> minmax_normalize(std::span<const double> v);

struct TriptychPaths {
  std::filesystem::path original;
  std::filesystem::path perturbation;
  std::filesystem::path perturbed;
};

/// Writes `<stem>_original.pgm`, `<stem>_perturbation.pgm` (s * a, min-max
/// normalized) and `<stem>_perturbed.pgm` (x + s * a clamped to [0, 1]).
TriptychPaths export_triptych(std::span<const double> image, std::span<const double> a, double scale,
                              learner::ImageShape shape, const std::filesystem::path& stem);

}  // namespace exal::data_io
