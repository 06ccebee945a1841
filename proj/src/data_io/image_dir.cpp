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

#include "exal/data_io.hpp"
#include "exal/error.hpp"

namespace fs = std::filesystem;

namespace exal::data_io {

RawLabeledImages load_image_dir(const fs::path& root, const std::vector<std::string>& classes, int side) {
  if (side < 1) throw ConfigError("image size must be positive");
  if (classes.empty()) throw ConfigError("load_image_dir: no class directories given");
  RawLabeledImages raw;
  raw.shape = {side, side};
  raw.class_names = classes;
  for (std::size_t label = 0; label < classes.size(); ++label) {
    const fs::path dir = root / classes[label];
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw DataError("class directory '" + dir.string() + "' does not exist");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().filename().string().front() != '.') {
        files.push_back(entry.path());
      }
    }
    if (files.empty()) throw DataError("class directory '" + dir.string() + "' is empty");
    std::sort(files.begin(), files.end());
    for (const fs::path& file : files) {
      const GrayImage img = resize_bilinear(decode_image(file), side, side);
      raw.pixels.insert(raw.pixels.end(), img.pixels.begin(), img.pixels.end());
      raw.labels.push_back(static_cast<std::uint32_t>(label));
    }
  }
  return raw;
}

}  // namespace exal::data_io
