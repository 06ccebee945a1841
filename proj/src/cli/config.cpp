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

#include "exal/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "../bytes.hpp"
#include "exal/error.hpp"

namespace exal::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Converts a raw value; `fail` reports what was expected.
struct Value {
  std::string_view text;
  const std::filesystem::path& base_dir;
  std::function<void(const std::string&)> fail;

  long long integer(long long lo, long long hi) const {
    long long v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size()) fail("expected an integer");
    if (v < lo || v > hi) fail("expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
  }

  double real() const {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  bool boolean() const {
    if (text == "true" || text == "yes" || text == "on" || text == "1") return true;
    if (text == "false" || text == "no" || text == "off" || text == "0") return false;
    fail("expected true or false");
    return false;
  }

  std::filesystem::path path() const {
    if (text.empty()) return {};
    std::filesystem::path p{std::string(text)};
    return p.is_absolute() ? p : base_dir / p;
  }

  std::vector<std::string> list() const {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size() && !text.empty()) {
      const auto comma = text.find(',', start);
      const auto item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (item.empty()) fail("empty list item");
      out.emplace_back(item);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  }
};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

std::string num(double v) { return detail::format_double(v); }
std::string flag(bool b) { return b ? "true" : "false"; }

struct Key {
  std::string_view name;
  std::function<void(RunConfig&, const Value&)> set;
  std::function<std::string(const RunConfig&)> get;
};

constexpr long long kIntMax = 1'000'000'000;

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"swarm.n_p", [](RunConfig& c, const Value& v) { c.game.swarm.particles = static_cast<int>(v.integer(1, kIntMax)); },
       [](const RunConfig& c) { return std::to_string(c.game.swarm.particles); }},
      {"swarm.beta", [](RunConfig& c, const Value& v) { c.game.swarm.beta = v.real(); },
       [](const RunConfig& c) { return num(c.game.swarm.beta); }},
      {"swarm.mu", [](RunConfig& c, const Value& v) { c.game.swarm.mu = v.real(); },
       [](const RunConfig& c) { return num(c.game.swarm.mu); }},
      {"swarm.c1", [](RunConfig& c, const Value& v) { c.game.swarm.c1 = v.real(); },
       [](const RunConfig& c) { return num(c.game.swarm.c1); }},
      {"swarm.c2", [](RunConfig& c, const Value& v) { c.game.swarm.c2 = v.real(); },
       [](const RunConfig& c) { return num(c.game.swarm.c2); }},
      {"swarm.t_max", [](RunConfig& c, const Value& v) { c.game.swarm.iterations = static_cast<int>(v.integer(1, kIntMax)); },
       [](const RunConfig& c) { return std::to_string(c.game.swarm.iterations); }},
      {"swarm.variant",
       [](RunConfig& c, const Value& v) {
         try {
           c.game.swarm.variant = swarm::parse_variant(v.text);
         } catch (const ConfigError&) {
           v.fail("expected pso, mpso or empso");
         }
       },
       [](const RunConfig& c) { return std::string(swarm::variant_name(c.game.swarm.variant)); }},
      {"swarm.clip_velocity", [](RunConfig& c, const Value& v) { c.game.swarm.clip_velocity = v.boolean(); },
       [](const RunConfig& c) { return flag(c.game.swarm.clip_velocity); }},
      {"swarm.stop_fitness",
       [](RunConfig& c, const Value& v) {
         if (v.text == "none") {
           c.game.swarm.stop_fitness.reset();
         } else {
           c.game.swarm.stop_fitness = v.real();
         }
       },
       [](const RunConfig& c) {
         return c.game.swarm.stop_fitness ? num(*c.game.swarm.stop_fitness) : std::string("none");
       }},
      {"swarm.workers", [](RunConfig& c, const Value& v) { c.game.swarm.workers = static_cast<int>(v.integer(1, 1024)); },
       [](const RunConfig& c) { return std::to_string(c.game.swarm.workers); }},

      {"train.epochs", [](RunConfig& c, const Value& v) { c.game.train.epochs = static_cast<int>(v.integer(1, kIntMax)); },
       [](const RunConfig& c) { return std::to_string(c.game.train.epochs); }},
      {"train.batch_size", [](RunConfig& c, const Value& v) { c.game.train.batch_size = static_cast<int>(v.integer(1, kIntMax)); },
       [](const RunConfig& c) { return std::to_string(c.game.train.batch_size); }},
      {"train.learning_rate", [](RunConfig& c, const Value& v) { c.game.train.learning_rate = v.real(); },
       [](const RunConfig& c) { return num(c.game.train.learning_rate); }},
      {"train.momentum", [](RunConfig& c, const Value& v) { c.game.train.momentum = v.real(); },
       [](const RunConfig& c) { return num(c.game.train.momentum); }},

      {"game.seed", [](RunConfig& c, const Value& v) { c.seed = parse_seed(v.text, "game.seed"); },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      {"game.bounds_halfwidth", [](RunConfig& c, const Value& v) { c.game.bounds_halfwidth = v.real(); },
       [](const RunConfig& c) { return num(c.game.bounds_halfwidth); }},
      {"game.scale", [](RunConfig& c, const Value& v) { c.game.scale = v.real(); },
       [](const RunConfig& c) { return num(c.game.scale); }},
      {"game.pairs",
       [](RunConfig& c, const Value& v) {
         try {
           c.pairs = parse_pairs(v.text);
         } catch (const ConfigError& e) {
           v.fail(e.what());
         }
       },
       [](const RunConfig& c) { return format_pairs(c.pairs); }},

      {"data.source",
       [](RunConfig& c, const Value& v) {
         if (v.text == "synthetic") {
           c.source = DataSource::kSynthetic;
         } else if (v.text == "idx") {
           c.source = DataSource::kIdx;
         } else if (v.text == "image_dir") {
           c.source = DataSource::kImageDir;
         } else {
           v.fail("expected synthetic, idx or image_dir");
         }
       },
       [](const RunConfig& c) { return std::string(data_source_name(c.source)); }},
      {"data.idx_images", [](RunConfig& c, const Value& v) { c.idx_images = v.path(); },
       [](const RunConfig& c) { return c.idx_images.string(); }},
      {"data.idx_labels", [](RunConfig& c, const Value& v) { c.idx_labels = v.path(); },
       [](const RunConfig& c) { return c.idx_labels.string(); }},
      {"data.image_dir", [](RunConfig& c, const Value& v) { c.image_dir = v.path(); },
       [](const RunConfig& c) { return c.image_dir.string(); }},
      {"data.classes", [](RunConfig& c, const Value& v) { c.classes = v.list(); },
       [](const RunConfig& c) { return join(c.classes); }},
      {"data.image_side", [](RunConfig& c, const Value& v) { c.image_side = static_cast<int>(v.integer(8, 4096)); },
       [](const RunConfig& c) { return std::to_string(c.image_side); }},
      {"data.samples_per_class",
       [](RunConfig& c, const Value& v) { c.samples_per_class = static_cast<std::size_t>(v.integer(2, kIntMax)); },
       [](const RunConfig& c) { return std::to_string(c.samples_per_class); }},
      {"data.train_fraction",
       [](RunConfig& c, const Value& v) {
         c.train_fraction = v.real();
         if (!(c.train_fraction > 0.0 && c.train_fraction < 1.0)) v.fail("expected a fraction in (0, 1)");
       },
       [](const RunConfig& c) { return num(c.train_fraction); }},
      {"data.synthetic_per_class",
       [](RunConfig& c, const Value& v) { c.synthetic.per_class = static_cast<std::size_t>(v.integer(2, kIntMax)); },
       [](const RunConfig& c) { return std::to_string(c.synthetic.per_class); }},
      {"data.synthetic_height",
       [](RunConfig& c, const Value& v) { c.synthetic.shape.height = static_cast<int>(v.integer(8, 4096)); },
       [](const RunConfig& c) { return std::to_string(c.synthetic.shape.height); }},
      {"data.synthetic_width",
       [](RunConfig& c, const Value& v) { c.synthetic.shape.width = static_cast<int>(v.integer(8, 4096)); },
       [](const RunConfig& c) { return std::to_string(c.synthetic.shape.width); }},
      {"data.synthetic_separation", [](RunConfig& c, const Value& v) { c.synthetic.separation = v.real(); },
       [](const RunConfig& c) { return num(c.synthetic.separation); }},
      {"data.synthetic_noise",
       [](RunConfig& c, const Value& v) {
         c.synthetic.noise = v.real();
         if (c.synthetic.noise < 0.0) v.fail("expected a non-negative number");
       },
       [](const RunConfig& c) { return num(c.synthetic.noise); }},

      {"output.dir", [](RunConfig& c, const Value& v) { c.output_dir = v.path(); },
       [](const RunConfig& c) { return c.output_dir.string(); }},
      {"output.images_per_class", [](RunConfig& c, const Value& v) { c.images_per_class = static_cast<int>(v.integer(0, kIntMax)); },
       [](const RunConfig& c) { return std::to_string(c.images_per_class); }},
      {"output.record_runtime", [](RunConfig& c, const Value& v) { c.record_runtime = v.boolean(); },
       [](const RunConfig& c) { return flag(c.record_runtime); }},
  };
  return table;
}

const Key* find_key(std::string_view name) {
  for (const Key& k : keys()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

}  // namespace

std::string_view data_source_name(DataSource source) {
  switch (source) {
    case DataSource::kSynthetic: return "synthetic";
    case DataSource::kIdx: return "idx";
    case DataSource::kImageDir: return "image_dir";
  }
  return "synthetic";
}

StageSeeds stage_seeds(std::uint64_t seed) { return {seed, seed + 1, seed + 2}; }

void apply_seed(RunConfig& config, std::uint64_t seed) {
  const StageSeeds s = stage_seeds(seed);
  config.seed = seed;
  config.game.train.seed = s.train;
  config.game.swarm.seed = s.swarm;
}

std::uint64_t parse_seed(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError(std::string(what) + ": expected an unsigned 64-bit integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::vector<LabelPair> parse_pairs(std::string_view text) {
  std::vector<LabelPair> pairs;
  if (trim(text).empty()) return pairs;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw ConfigError("pair '" + std::string(item) + "' is not of the form positive:negative");
    }
    const auto pos = trim(item.substr(0, colon));
    const auto neg = trim(item.substr(colon + 1));
    if (pos.empty() || neg.empty()) throw ConfigError("pair '" + std::string(item) + "' has an empty label");
    pairs.emplace_back(std::string(pos), std::string(neg));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return pairs;
}

std::string format_pairs(const std::vector<LabelPair>& pairs) {
  std::string out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out += (i ? "," : "") + pairs[i].first + ":" + pairs[i].second;
  }
  return out;
}

RunConfig parse_config(std::string_view text, const std::string& origin, const std::filesystem::path& base_dir) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string where = origin + ":" + std::to_string(line_no);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw ConfigError(where + ": malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string_view raw_key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (raw_key.empty()) throw ConfigError(where + ": empty key");

    const std::string key = raw_key.find('.') == std::string_view::npos && !section.empty()
                                ? section + "." + std::string(raw_key)
                                : std::string(raw_key);
    const Key* handler = find_key(key);
    if (handler == nullptr) throw ConfigError(where + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + ": key '" + key + "' set twice");

    const Value v{value, base_dir, [&](const std::string& what) {
                    throw ConfigError(where + ": key '" + key + "': " + what + ", got '" + std::string(value) + "'");
                  }};
    handler->set(config, v);
  }

  apply_seed(config, config.seed);
  try {
    config.game.swarm.validate();
    config.game.train.validate();
    if (!(config.game.bounds_halfwidth > 0.0)) throw ConfigError("game.bounds_halfwidth must be > 0");
    if (!(config.game.scale > 0.0)) throw ConfigError("game.scale must be > 0");
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string(), path.parent_path());
}

std::vector<std::pair<std::string, std::string>> snapshot(const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(keys().size());
  for (const Key& k : keys()) out.emplace_back(std::string(k.name), k.get(config));
  return out;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const RunConfig& config) {
  if (flag) return *flag;
  if (const char* env = std::getenv("EXAL_SEED"); env != nullptr && *env != '\0') {
    return parse_seed(env, "EXAL_SEED");
  }
  return config.seed;
}

}  // namespace exal::cli
