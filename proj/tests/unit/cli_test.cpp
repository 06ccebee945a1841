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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <json.hpp>

#include "exal/cli/commands.hpp"
#include "exal/cli/config.hpp"
#include "exal/error.hpp"
#include "exal/game.hpp"

namespace {

using namespace exal;
using namespace exal::cli;
namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "exal_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path write_config(const fs::path& dir, const std::string& body) {
  const fs::path p = dir / "run.cfg";
  std::ofstream(p, std::ios::binary) << body;
  return p;
}

const char* kTinySynthetic = R"(
[game]
seed = 42
[swarm]
n_p = 4
t_max = 3
[train]
epochs = 1
[data]
source = synthetic
synthetic_per_class = 30
[output]
dir = out
)";

RunGameOptions game_options(const fs::path& config) {
  RunGameOptions options;
  options.config = config;
  return options;
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) { ::setenv(name, value, 1); }
  ~ScopedEnv() { ::unsetenv(name_); }

 private:
  const char* name_;
};

// ---- config parsing

TEST(Config, DefaultsWhenEmpty) {
  const RunConfig c = parse_config("", "mem", ".");
  EXPECT_EQ(c.game.swarm.particles, 20);
  EXPECT_EQ(c.game.swarm.beta, 0.9);
  EXPECT_EQ(c.game.swarm.c1, 2.0);
  EXPECT_EQ(c.game.swarm.c2, 2.0);
  EXPECT_EQ(c.game.swarm.iterations, 50);
  EXPECT_EQ(c.game.bounds_halfwidth, 0.1);
  EXPECT_EQ(c.game.scale, 1.0);
  EXPECT_FALSE(c.game.swarm.clip_velocity);
  EXPECT_FALSE(c.game.swarm.stop_fitness.has_value());
  EXPECT_EQ(c.samples_per_class, 1000u);
  EXPECT_EQ(c.train_fraction, 0.8);
  EXPECT_EQ(c.source, DataSource::kSynthetic);
}

TEST(Config, SectionsDottedKeysAndComments) {
  const RunConfig c = parse_config(
      "# header\n[swarm]\nn_p = 7   # inline\nvariant = mpso\ntrain.epochs = 3\n\n[game]\npairs = 2:8, 4:9\n"
      "[data]\nsource = idx\nidx_images = d/img\n",
      "mem", "/base");
  EXPECT_EQ(c.game.swarm.particles, 7);
  EXPECT_EQ(c.game.swarm.variant, swarm::Variant::kMpso);
  EXPECT_EQ(c.game.train.epochs, 3);
  ASSERT_EQ(c.pairs.size(), 2u);
  EXPECT_EQ(c.pairs[1], (LabelPair{"4", "9"}));
  EXPECT_EQ(c.idx_images, fs::path("/base/d/img"));
}

TEST(Config, ErrorsNameKeyAndLine) {
  const auto message = [](const std::string& text) {
    try {
      parse_config(text, "cfg", ".");
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("[swarm]\nbogus = 1\n").find("cfg:2: unknown key 'swarm.bogus'"), std::string::npos);
  EXPECT_NE(message("swarm.n_p = x\n").find("'swarm.n_p'"), std::string::npos);
  EXPECT_NE(message("swarm.n_p = 3\nswarm.n_p = 4\n").find("set twice"), std::string::npos);
  EXPECT_NE(message("swarm.beta = 1.5\n").find("beta"), std::string::npos);
  EXPECT_NE(message("game.scale = 0\n").find("game.scale"), std::string::npos);
  EXPECT_NE(message("just text\n").find("cfg:1"), std::string::npos);
  EXPECT_NE(message("[swarm\n").find("section"), std::string::npos);
  EXPECT_NE(message("data.source = csv\n").find("data.source"), std::string::npos);
  EXPECT_NE(message("game.pairs = 2-8\n").find("game.pairs"), std::string::npos);
}

TEST(Config, SnapshotIsTotalAndRoundTrips) {
  const RunConfig c = parse_config("swarm.n_p = 11\nswarm.stop_fitness = -1.5\ngame.pairs = a:b\ndata.classes = a,b\n",
                                   "mem", "/abs");
  std::string text;
  for (const auto& [key, value] : snapshot(c)) {
    EXPECT_FALSE(key.empty());
    text += key + " = " + value + "\n";
  }
  const RunConfig again = parse_config(text, "snapshot", "");
  EXPECT_EQ(snapshot(again), snapshot(c));
  EXPECT_EQ(again.game.swarm.stop_fitness, -1.5);
}

TEST(Config, MissingFileIsConfigError) { EXPECT_THROW(load_config("/no/such/exal.cfg"), ConfigError); }

TEST(Pairs, ParseAndFormat) {
  const auto pairs = parse_pairs("2:8,4:9,VBA:VBKrypt");
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_EQ(pairs[2], (LabelPair{"VBA", "VBKrypt"}));
  EXPECT_EQ(format_pairs(pairs), "2:8,4:9,VBA:VBKrypt");
  EXPECT_TRUE(parse_pairs("").empty());
  EXPECT_THROW(parse_pairs("2:"), ConfigError);
  EXPECT_THROW(parse_pairs("28"), ConfigError);
}

TEST(Seeds, PrecedenceFlagThenEnvironmentThenConfig) {
  RunConfig c;
  c.seed = 5;
  ::unsetenv("EXAL_SEED");
  EXPECT_EQ(resolve_seed(std::nullopt, c), 5u);
  {
    ScopedEnv env("EXAL_SEED", "17");
    EXPECT_EQ(resolve_seed(std::nullopt, c), 17u);
    EXPECT_EQ(resolve_seed(99, c), 99u);
  }
  {
    ScopedEnv env("EXAL_SEED", "seventeen");
    EXPECT_THROW(resolve_seed(std::nullopt, c), ConfigError);
  }
}

TEST(Seeds, StageSeedsAreDistinctAndApplied) {
  RunConfig c;
  apply_seed(c, 100);
  const StageSeeds s = stage_seeds(100);
  EXPECT_EQ(c.seed, 100u);
  EXPECT_EQ(c.game.train.seed, s.train);
  EXPECT_EQ(c.game.swarm.seed, s.swarm);
  EXPECT_NE(s.train, s.swarm);
}

// ---- run-game

TEST(RunGame, SyntheticRunWritesArtifactsAndIsByteIdentical) {
  ::unsetenv("EXAL_SEED");
  const fs::path dir = scratch("run");
  const fs::path cfg = write_config(dir, kTinySynthetic);
  std::ostringstream out, err;
  RunGameOptions opts = game_options(cfg);
  ASSERT_EQ(cmd_run_game(opts, out, err), kExitOk) << err.str();

  const fs::path o = dir / "out";
  const std::string csv = slurp(o / "results.csv");
  EXPECT_EQ(csv.rfind("labels_pos,labels_neg,scale,f1_original,f1_manipulated,f1_secure,hypothesis,seed,runtime_seconds\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_EQ(csv.find('\r'), std::string::npos);

  const auto manifest = nlohmann::json::parse(slurp(o / "run_manifest.json"));
  EXPECT_EQ(manifest["seed"], 42);
  EXPECT_TRUE(fs::exists(manifest["artifacts"]["results_csv"].get<std::string>()));
  for (const auto& pair : manifest["artifacts"]["pairs"]) {
    for (const char* key : {"perturbation", "weights", "loss_csv", "image_dir"}) {
      EXPECT_TRUE(fs::exists(pair[key].get<std::string>())) << key;
    }
    for (const auto& img : pair["images"]) EXPECT_TRUE(fs::exists(img.get<std::string>()));
  }
  for (const auto& [key, value] : snapshot(load_config(cfg))) {
    EXPECT_TRUE(manifest["config"].contains(key)) << key;
  }

  const std::string first_csv = csv;
  const std::string first_a = slurp(o / "perturbation_high_low.exalp");
  const std::string first_img = slurp(o / "images" / "high_low" / "high_0_perturbed.pgm");
  ASSERT_EQ(cmd_run_game(opts, out, err), kExitOk);
  EXPECT_EQ(slurp(o / "results.csv"), first_csv);
  EXPECT_EQ(slurp(o / "perturbation_high_low.exalp"), first_a);
  EXPECT_EQ(slurp(o / "images" / "high_low" / "high_0_perturbed.pgm"), first_img);
}

TEST(RunGame, OverridesApply) {
  ::unsetenv("EXAL_SEED");
  const fs::path dir = scratch("overrides");
  const fs::path cfg = write_config(dir, kTinySynthetic);
  std::ostringstream out, err;
  RunGameOptions opts = game_options(cfg);
  opts.seed = 7;
  opts.scale = 2.5;
  opts.out = dir / "elsewhere";
  ASSERT_EQ(cmd_run_game(opts, out, err), kExitOk) << err.str();
  const std::string csv = slurp(dir / "elsewhere" / "results.csv");
  EXPECT_NE(csv.find("high,low,2.5,"), std::string::npos) << csv;
  EXPECT_NE(csv.find(",7,0.000\n"), std::string::npos) << csv;
}

TEST(RunGame, ExitCodes) {
  const fs::path dir = scratch("exits");
  std::ostringstream out, err;

  RunGameOptions missing_cfg = game_options(dir / "absent.cfg");
  EXPECT_EQ(cmd_run_game(missing_cfg, out, err), kExitConfig);

  const fs::path bad_data = write_config(
      dir, "[data]\nsource = idx\nidx_images = /no/such/images\nidx_labels = /no/such/labels\n[game]\npairs = 2:8\n");
  err.str("");
  EXPECT_EQ(cmd_run_game(game_options(bad_data), out, err), kExitData);
  EXPECT_NE(err.str().find("/no/such/images"), std::string::npos) << err.str();

  RunGameOptions bad_scale = game_options(write_config(dir, kTinySynthetic));
  bad_scale.scale = -1.0;
  EXPECT_EQ(cmd_run_game(bad_scale, out, err), kExitConfig);

  RunGameOptions bad_pairs = game_options(write_config(dir, kTinySynthetic));
  bad_pairs.pairs = "2:8";
  EXPECT_EQ(cmd_run_game(bad_pairs, out, err), kExitConfig);
}

TEST(RunGame, IdxSourceWithPairs) {
  ::unsetenv("EXAL_SEED");
  const fs::path dir = scratch("idx");
  data_io::RawLabeledImages raw;
  raw.shape = {8, 8};
  for (std::uint32_t label : {2u, 8u, 4u}) {
    for (int i = 0; i < 10; ++i) {
      for (int p = 0; p < 64; ++p) raw.pixels.push_back(static_cast<std::uint8_t>(label * 25 + (p + i) % 40));
      raw.labels.push_back(label);
    }
  }
  data_io::write_idx(raw, dir / "img", dir / "lbl");
  const fs::path cfg = write_config(dir, std::string(kTinySynthetic).replace(
                                             std::string(kTinySynthetic).find("source = synthetic"),
                                             std::string("source = synthetic").size(),
                                             "source = idx\nidx_images = img\nidx_labels = lbl\nsamples_per_class = 10"));
  std::ostringstream out, err;
  RunGameOptions opts = game_options(cfg);
  opts.pairs = "2:8,4:2";
  ASSERT_EQ(cmd_run_game(opts, out, err), kExitOk) << err.str();
  const std::string csv = slurp(dir / "out" / "results.csv");
  EXPECT_NE(csv.find("\n2,8,"), std::string::npos);
  EXPECT_NE(csv.find("\n4,2,"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "out" / "images" / "4_2" / "2_0_perturbation.pgm"));

  opts.pairs = "2:9";
  EXPECT_EQ(cmd_run_game(opts, out, err), kExitConfig);
}

// ---- bench

TEST(Bench, EmitsTMaxRowsPerVariant) {
  std::ostringstream out, err;
  BenchOptions opts;
  opts.function = "rastrigin";
  ASSERT_EQ(cmd_bench(opts, out, err), kExitOk) << err.str();
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "iteration,variant,fitness");
  std::map<std::string, int> rows;
  while (std::getline(lines, line)) rows[line.substr(line.find(',') + 1, line.rfind(',') - line.find(',') - 1)]++;
  EXPECT_EQ(rows["pso"], 50);
  EXPECT_EQ(rows["mpso"], 50);
  EXPECT_EQ(rows["empso"], 50);
}

TEST(Bench, SphereEmpsoMedianBelowThreshold) {
  std::vector<double> finals;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::ostringstream out, err;
    BenchOptions opts;
    opts.function = "sphere";
    opts.seed = seed;
    ASSERT_EQ(cmd_bench(opts, out, err), kExitOk);
    const std::string text = out.str();
    const auto last = text.rfind("\n50,empso,");
    ASSERT_NE(last, std::string::npos);
    finals.push_back(std::stod(text.substr(last + 10)));
  }
  std::nth_element(finals.begin(), finals.begin() + 5, finals.end());
  EXPECT_LT(finals[5], 1e-2);
}

TEST(Bench, UnknownFunctionExitsTwo) {
  std::ostringstream out, err;
  BenchOptions opts;
  opts.function = "ackley";
  EXPECT_EQ(cmd_bench(opts, out, err), kExitConfig);
  EXPECT_NE(err.str().find("ackley"), std::string::npos);
}

// ---- export-images

TEST(ExportImages, ScaleZeroAndDimensionMismatch) {
  const fs::path dir = scratch("export");
  const fs::path cfg = write_config(dir, kTinySynthetic);
  game::write_perturbation(std::vector<double>(256, 0.05), dir / "a.exalp");
  std::ostringstream out, err;

  ExportOptions opts{dir / "a.exalp", cfg, 0.0, dir / "zero", std::nullopt};
  ASSERT_EQ(cmd_export_images(opts, out, err), kExitOk) << err.str();
  EXPECT_EQ(slurp(dir / "zero" / "high_0_original.pgm"), slurp(dir / "zero" / "high_0_perturbed.pgm"));
  EXPECT_EQ(slurp(dir / "zero" / "low_0_original.pgm"), slurp(dir / "zero" / "low_0_perturbed.pgm"));

  opts.per_class = 3;
  opts.out = dir / "three";
  ASSERT_EQ(cmd_export_images(opts, out, err), kExitOk);
  EXPECT_TRUE(fs::exists(dir / "three" / "low_2_perturbation.pgm"));

  game::write_perturbation(std::vector<double>(100, 0.05), dir / "short.exalp");
  err.str("");
  ExportOptions mismatch{dir / "short.exalp", cfg, 1.0, dir / "bad", std::nullopt};
  EXPECT_EQ(cmd_export_images(mismatch, out, err), kExitConfig);
  EXPECT_NE(err.str().find("100"), std::string::npos);
  EXPECT_NE(err.str().find("256"), std::string::npos);

  ExportOptions missing{dir / "none.exalp", cfg, 1.0, dir / "bad", std::nullopt};
  EXPECT_EQ(cmd_export_images(missing, out, err), kExitData);
}

TEST(ExportImages, PerturbationPanelsMatchAcrossPositiveScales) {
  const fs::path dir = scratch("export_scale");
  const fs::path cfg = write_config(dir, kTinySynthetic);
  std::vector<double> a(256);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = 0.001 * static_cast<double>(i % 17) - 0.008;
  game::write_perturbation(a, dir / "a.exalp");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_export_images({dir / "a.exalp", cfg, 1.0, dir / "s1", std::nullopt}, out, err), kExitOk);
  ASSERT_EQ(cmd_export_images({dir / "a.exalp", cfg, 5.0, dir / "s5", std::nullopt}, out, err), kExitOk);
  EXPECT_EQ(slurp(dir / "s1" / "high_0_perturbation.pgm"), slurp(dir / "s5" / "high_0_perturbation.pgm"));
  EXPECT_NE(slurp(dir / "s1" / "high_0_perturbed.pgm"), slurp(dir / "s5" / "high_0_perturbed.pgm"));
}

// ---- the executable

int run_tool(const std::string& args) {
  const std::string cmd = std::string(EXAL_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Executable, ExitCodesMatchTheContract) {
  const fs::path dir = scratch("exe");
  const fs::path cfg = write_config(dir, kTinySynthetic);
  EXPECT_EQ(run_tool("bench --fn sphere --dims 2 --seed 3"), 0);
  EXPECT_EQ(run_tool("bench --fn ackley"), 2);
  EXPECT_EQ(run_tool("frobnicate"), 2);
  EXPECT_EQ(run_tool("run-game --config " + cfg.string() + " --seed notanumber"), 2);
  EXPECT_EQ(run_tool("run-game --config " + cfg.string() + " --out " + (dir / "o").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "o" / "results.csv"));
  EXPECT_EQ(run_tool("export-images --perturbation " + (dir / "o" / "perturbation_high_low.exalp").string() +
                     " --config " + cfg.string() + " --scale 5 --out " + (dir / "img").string()),
            0);
  EXPECT_TRUE(fs::exists(dir / "img" / "low_0_perturbed.pgm"));
}

TEST(Executable, EnvironmentSeedOverridesConfig) {
  const fs::path dir = scratch("exe_env");
  const fs::path cfg = write_config(dir, kTinySynthetic);
  ScopedEnv env("EXAL_SEED", "1234");
  ASSERT_EQ(run_tool("run-game --config " + cfg.string()), 0);
  EXPECT_NE(slurp(dir / "out" / "results.csv").find(",1234,"), std::string::npos);
}

}  // namespace
