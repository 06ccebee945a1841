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

#include "exal/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <set>

#include <json.hpp>

#include "../bytes.hpp"
#include "exal/benchmark_functions.hpp"
#include "exal/error.hpp"
#include "exal/simd/kernels.hpp"

namespace exal::cli {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr std::string_view kSyntheticPositive = "high";
constexpr std::string_view kSyntheticNegative = "low";

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<LabelPair> effective_pairs(const RunConfig& config) {
  if (config.source == DataSource::kSynthetic) {
    const LabelPair only{std::string(kSyntheticPositive), std::string(kSyntheticNegative)};
    for (const LabelPair& p : config.pairs) {
      if (p != only) {
        throw ConfigError("game.pairs: synthetic data has the single pair " + only.first + ":" + only.second +
                          ", got " + p.first + ":" + p.second);
      }
    }
    return {only};
  }
  if (config.pairs.empty()) throw ConfigError("game.pairs: at least one positive:negative pair is required");
  return config.pairs;
}

std::vector<std::string> pair_labels(const std::vector<LabelPair>& pairs) {
  std::vector<std::string> labels;
  for (const auto& [pos, neg] : pairs) {
    for (const std::string& l : {pos, neg}) {
      if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
    }
  }
  return labels;
}

data_io::RawLabeledImages load_raw(const RunConfig& config, const std::vector<LabelPair>& pairs) {
  if (config.source == DataSource::kIdx) {
    if (config.idx_images.empty()) throw ConfigError("data.idx_images is required when data.source = idx");
    if (config.idx_labels.empty()) throw ConfigError("data.idx_labels is required when data.source = idx");
    return data_io::load_idx(config.idx_images, config.idx_labels);
  }
  if (config.image_dir.empty()) throw ConfigError("data.image_dir is required when data.source = image_dir");
  const std::vector<std::string> classes = config.classes.empty() ? pair_labels(pairs) : config.classes;
  if (classes.empty()) throw ConfigError("data.classes: no classes to load");
  return data_io::load_image_dir(config.image_dir, classes, config.image_side);
}

struct LoadedPair {
  std::string positive;
  std::string negative;
  data_io::TrainTestSplit split;
};

// Lazily holds the raw corpus so several pairs share one load.
class PairLoader {
 public:
  PairLoader(const RunConfig& config, std::vector<LabelPair> pairs) : config_(config), pairs_(std::move(pairs)) {
    if (config_.source != DataSource::kSynthetic) raw_ = load_raw(config_, pairs_);
  }

  const std::vector<LabelPair>& pairs() const { return pairs_; }

  LoadedPair load(const LabelPair& pair) const {
    const std::uint64_t seed = stage_seeds(config_.seed).data;
    if (config_.source == DataSource::kSynthetic) {
      const learner::Dataset all = data_io::make_synthetic(config_.synthetic, seed);
      return {pair.first, pair.second, data_io::split_dataset(all, config_.train_fraction, seed)};
    }
    data_io::PairSpec spec;
    spec.positive = pair.first;
    spec.negative = pair.second;
    spec.samples_per_class = config_.samples_per_class;
    spec.train_fraction = config_.train_fraction;
    return {pair.first, pair.second, data_io::make_pair_dataset(raw_, spec, seed)};
  }

 private:
  const RunConfig& config_;
  std::vector<LabelPair> pairs_;
  data_io::RawLabeledImages raw_;
};

struct NamedImages {
  std::string name;
  std::vector<std::vector<double>> images;
};

// First k images of one label in dataset order.
std::vector<std::vector<double>> first_of_label(const learner::Dataset& data, std::uint8_t label, int k) {
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < data.size() && static_cast<int>(out.size()) < k; ++i) {
    if (data.label(i) == label) out.emplace_back(data.row(i).begin(), data.row(i).end());
  }
  return out;
}

std::vector<fs::path> write_triptychs(const std::vector<NamedImages>& classes, std::span<const double> a,
                                      double scale, learner::ImageShape shape, const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<fs::path> written;
  for (const NamedImages& cls : classes) {
    for (std::size_t k = 0; k < cls.images.size(); ++k) {
      const auto paths = data_io::export_triptych(cls.images[k], a, scale, shape,
                                                  dir / (cls.name + "_" + std::to_string(k)));
      written.insert(written.end(), {paths.original, paths.perturbation, paths.perturbed});
    }
  }
  return written;
}

std::string pair_tag(const std::string& pos, const std::string& neg) { return pos + "_" + neg; }

nlohmann::ordered_json config_json(const RunConfig& config) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [key, value] : snapshot(config)) j[key] = value;
  return j;
}

}  // namespace

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ContractViolation& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_run_game(const RunGameOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto started = Clock::now();
    RunConfig config = load_config(options.config);
    apply_seed(config, resolve_seed(options.seed, config));
    if (options.pairs) config.pairs = parse_pairs(*options.pairs);
    if (options.scale) config.game.scale = *options.scale;
    if (options.out) config.output_dir = *options.out;
    config.game.validate();

    const PairLoader loader(config, effective_pairs(config));
    const fs::path dir = config.output_dir;
    fs::create_directories(dir);

    nlohmann::ordered_json artifacts;
    artifacts["results_csv"] = (dir / "results.csv").string();
    artifacts["pairs"] = nlohmann::ordered_json::array();

    std::vector<game::ResultRow> rows;
    for (const LabelPair& pair : loader.pairs()) {
      const auto pair_started = Clock::now();
      const LoadedPair data = loader.load(pair);
      const game::ExalOutcome exal = game::run_exal(data.split.train, config.game);
      game::GameResult result =
          game::build_and_score(data.split.train, data.split.test, exal.a_star, config.game, exal.weights);
      for (double f : exal.search.trace) result.payoff_trace.push_back(-f);

      const std::string tag = pair_tag(data.positive, data.negative);
      const fs::path perturbation = dir / ("perturbation_" + tag + ".exalp");
      const fs::path weights = dir / ("weights_" + tag + ".exalw");
      const fs::path loss = dir / ("loss_" + tag + ".csv");
      const fs::path images = dir / "images" / tag;
      game::write_perturbation(exal.a_star, perturbation);
      learner::write_weights(exal.weights, weights);
      learner::write_loss_csv(exal.training.epoch_loss, loss);
      const std::vector<NamedImages> samples = {
          {data.positive, first_of_label(data.split.test, 1, config.images_per_class)},
          {data.negative, first_of_label(data.split.test, 0, config.images_per_class)},
      };
      std::vector<std::string> image_files;
      for (const fs::path& p : write_triptychs(samples, exal.a_star, config.game.scale, data.split.train.shape(), images)) {
        image_files.push_back(p.string());
      }

      game::ResultRow row;
      row.positive = data.positive;
      row.negative = data.negative;
      row.scale = config.game.scale;
      row.seed = config.seed;
      row.result = std::move(result);
      const double elapsed = seconds_since(pair_started);
      row.runtime_seconds = config.record_runtime ? elapsed : 0.0;

      out << tag << ": f1 original " << detail::format_double(row.result.f1_original) << ", manipulated "
          << detail::format_double(row.result.f1_manipulated) << ", secure "
          << detail::format_double(row.result.f1_secure) << " -> "
          << game::hypothesis_label(row.result.hypothesis_satisfied) << "\n";

      nlohmann::ordered_json entry;
      entry["positive"] = data.positive;
      entry["negative"] = data.negative;
      entry["perturbation"] = perturbation.string();
      entry["weights"] = weights.string();
      entry["loss_csv"] = loss.string();
      entry["image_dir"] = images.string();
      entry["images"] = image_files;
      entry["runtime_seconds"] = elapsed;
      artifacts["pairs"].push_back(std::move(entry));
      rows.push_back(std::move(row));
    }
    game::write_results_csv(rows, dir / "results.csv");

    const StageSeeds seeds = stage_seeds(config.seed);
    nlohmann::ordered_json manifest;
    manifest["seed"] = config.seed;
    manifest["stage_seeds"] = {{"data", seeds.data},
                               {"train", seeds.train},
                               {"swarm", seeds.swarm},
                               {"secure_train", game::secure_seed(seeds.train)}};
    manifest["config"] = config_json(config);
    manifest["artifacts"] = std::move(artifacts);
    manifest["simd"] = std::string(simd::isa_name(simd::active().isa));
    manifest["runtime_seconds"] = seconds_since(started);
    detail::write_text(dir / "run_manifest.json", manifest.dump(2) + "\n");
    out << "wrote " << (dir / "results.csv").string() << "\n";
    return kExitOk;
  });
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const swarm::BenchmarkFunction& fn = swarm::benchmark_function(options.function);
    if (options.dims < 1) throw ConfigError("bench: --dims must be >= 1");
    RunConfig config = options.config ? load_config(*options.config) : RunConfig{};
    const std::uint64_t seed = resolve_seed(options.seed, config);

    const auto bounds = swarm::Bounds::uniform(options.dims, fn.lower, fn.upper);
    const swarm::FitnessFn fitness = [&fn](std::span<const double> v) { return fn.fn(v); };

    std::string csv = "iteration,variant,fitness\n";
    for (swarm::Variant variant : {swarm::Variant::kPso, swarm::Variant::kMpso, swarm::Variant::kEmpso}) {
      swarm::SwarmConfig sc = config.game.swarm;
      sc.variant = variant;
      sc.seed = seed;
      const swarm::OptimizeResult r = swarm::optimize(fitness, bounds, sc);
      const std::string name(swarm::variant_name(variant));
      for (std::size_t i = 0; i < r.trace.size(); ++i) {
        csv += std::to_string(i + 1) + "," + name + "," + detail::format_double(r.trace[i]) + "\n";
      }
      if (options.out) out << name << ": final fitness " << detail::format_double(r.best_fitness) << "\n";
    }
    if (options.out) {
      detail::write_text(*options.out, csv);
    } else {
      out << csv;
    }
    return kExitOk;
  });
}

int cmd_export_images(const ExportOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!std::isfinite(options.scale)) throw ConfigError("export-images: --scale must be finite");
    const RunConfig config = load_config(options.config);
    const int k = options.per_class.value_or(config.images_per_class);
    if (k < 0) throw ConfigError("export-images: --per-class must be >= 0");
    const std::vector<double> a = game::read_perturbation(options.perturbation);

    learner::ImageShape shape;
    std::vector<NamedImages> classes;
    if (config.source == DataSource::kSynthetic) {
      const learner::Dataset data = data_io::make_synthetic(config.synthetic, stage_seeds(config.seed).data);
      shape = data.shape();
      classes.push_back({std::string(kSyntheticPositive), first_of_label(data, 1, k)});
      classes.push_back({std::string(kSyntheticNegative), first_of_label(data, 0, k)});
    } else {
      const data_io::RawLabeledImages raw = load_raw(config, config.pairs);
      shape = raw.shape;
      std::vector<std::uint32_t> labels;
      if (config.pairs.empty()) {
        labels.assign(raw.labels.begin(), raw.labels.end());
        std::sort(labels.begin(), labels.end());
        labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
      } else {
        for (const std::string& name : pair_labels(config.pairs)) labels.push_back(raw.resolve_label(name));
      }
      for (std::uint32_t label : labels) {
        NamedImages cls{raw.label_name(label), {}};
        for (std::size_t i = 0; i < raw.size() && static_cast<int>(cls.images.size()) < k; ++i) {
          if (raw.labels[i] != label) continue;
          std::vector<double> img(raw.image(i).begin(), raw.image(i).end());
          for (double& v : img) v /= 255.0;
          cls.images.push_back(std::move(img));
        }
        classes.push_back(std::move(cls));
      }
    }
    if (a.size() != shape.pixels()) {
      throw ConfigError("export-images: perturbation has " + std::to_string(a.size()) + " values but images are " +
                        std::to_string(shape.height) + "x" + std::to_string(shape.width) + " = " +
                        std::to_string(shape.pixels()) + " pixels");
    }
    const auto written = write_triptychs(classes, a, options.scale, shape, options.out);
    out << "wrote " << written.size() << " images to " << options.out.string() << "\n";
    return kExitOk;
  });
}

}  // namespace exal::cli
