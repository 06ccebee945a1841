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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "exal/data_io.hpp"
#include "exal/game.hpp"

namespace exal::cli {

enum class DataSource { kSynthetic, kIdx, kImageDir };

std::string_view data_source_name(DataSource source);

using LabelPair = std::pair<std::string, std::string>;

/// Every knob a run can take, fully resolved. Defaults apply to keys the file omits.
struct RunConfig {
  game::GameConfig game;
  std::uint64_t seed = 42;

  DataSource source = DataSource::kSynthetic;
  std::filesystem::path idx_images;
  std::filesystem::path idx_labels;
  std::filesystem::path image_dir;
  std::vector<std::string> classes;  // image_dir subdirectories; empty means "the pair labels"
  int image_side = 32;
  std::vector<LabelPair> pairs;      // empty for synthetic data means one high:low pair
  std::size_t samples_per_class = 1000;
  double train_fraction = 0.8;
  data_io::SyntheticSpec synthetic;

  std::filesystem::path output_dir = "exal_out";
  int images_per_class = 1;
  bool record_runtime = false;
};

/// Seeds of the individual stages, all derived from one run seed.
struct StageSeeds {
  std::uint64_t data;
  std::uint64_t train;
  std::uint64_t swarm;
};
StageSeeds stage_seeds(std::uint64_t seed);

/// Sets `config.seed` and the derived train and swarm seeds.
void apply_seed(RunConfig& config, std::uint64_t seed);

/// Parses "2:8,4:9". Throws ConfigError on an empty label or a missing colon.
std::vector<LabelPair> parse_pairs(std::string_view text);
std::string format_pairs(const std::vector<LabelPair>& pairs);

/// Reads the key-value format:
///
///   # comment
///   [swarm]
///   n_p = 10
///   train.epochs = 3      # a dotted key works in any section
///
/// Relative paths resolve against `base_dir`. Unknown or repeated keys and bad
/// values raise ConfigError naming the key and line.
RunConfig parse_config(std::string_view text, const std::string& origin,
                       const std::filesystem::path& base_dir);

/// parse_config on a file; a missing file is a ConfigError naming it.
RunConfig load_config(const std::filesystem::path& path);

/// Resolved settings as ordered key/value strings, covering every key the parser accepts.
std::vector<std::pair<std::string, std::string>> snapshot(const RunConfig& config);

/// Seed precedence: explicit flag, then EXAL_SEED, then the config file.
/// Throws ConfigError when EXAL_SEED is set but not an unsigned integer.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const RunConfig& config);

std::uint64_t parse_seed(std::string_view text, std::string_view what);

}  // namespace exal::cli
