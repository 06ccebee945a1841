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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "exal/cli/commands.hpp"

namespace {

std::uint64_t seed_option(const std::string& text) { return exal::cli::parse_seed(text, "--seed"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ExAL: adversarial learning as a game between a swarm adversary and a CNN learner"};
  app.require_subcommand(1);

  exal::cli::RunGameOptions game;
  std::string game_seed;
  std::string game_pairs;
  double game_scale = 1.0;
  std::string game_out;
  auto* run = app.add_subcommand("run-game", "Train, attack and retrain for each configured label pair");
  run->add_option("--config", game.config, "Config file")->required();
  auto* run_seed = run->add_option("--seed", game_seed, "Run seed (overrides EXAL_SEED and the config)");
  auto* run_pairs = run->add_option("--pairs", game_pairs, "Label pairs, e.g. 2:8,4:9");
  auto* run_scale = run->add_option("--scale", game_scale, "Scale applied to A* after the search");
  auto* run_out = run->add_option("--out", game_out, "Output directory (overrides output.dir)");

  exal::cli::BenchOptions bench;
  std::string bench_seed;
  std::string bench_config;
  std::string bench_out;
  auto* bench_cmd = app.add_subcommand("bench", "Compare PSO, MPSO and EMPSO on a test function");
  bench_cmd->add_option("--fn", bench.function, "sphere, rastrigin or rosenbrock")->required();
  bench_cmd->add_option("--dims", bench.dims, "Dimensions")->capture_default_str();
  auto* bench_seed_opt = bench_cmd->add_option("--seed", bench_seed, "Swarm seed");
  auto* bench_config_opt = bench_cmd->add_option("--config", bench_config, "Config file for swarm.* keys");
  auto* bench_out_opt = bench_cmd->add_option("--out", bench_out, "CSV path (stdout when omitted)");

  exal::cli::ExportOptions exp;
  int per_class = 1;
  auto* export_cmd = app.add_subcommand("export-images", "Render original, perturbation and perturbed images");
  export_cmd->add_option("--perturbation", exp.perturbation, "EXALP1 file")->required();
  export_cmd->add_option("--config", exp.config, "Config file naming the dataset")->required();
  export_cmd->add_option("--scale", exp.scale, "Scale applied to the perturbation")->required();
  export_cmd->add_option("--out", exp.out, "Output directory")->required();
  auto* per_class_opt = export_cmd->add_option("--per-class", per_class, "Images per class");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exal::cli::kExitConfig;
  }

  if (run->parsed()) {
    return exal::cli::guarded(std::cerr, [&] {
      if (*run_seed) game.seed = seed_option(game_seed);
      if (*run_pairs) game.pairs = game_pairs;
      if (*run_scale) game.scale = game_scale;
      if (*run_out) game.out = game_out;
      return exal::cli::cmd_run_game(game, std::cout, std::cerr);
    });
  }
  if (bench_cmd->parsed()) {
    return exal::cli::guarded(std::cerr, [&] {
      if (*bench_seed_opt) bench.seed = seed_option(bench_seed);
      if (*bench_config_opt) bench.config = bench_config;
      if (*bench_out_opt) bench.out = bench_out;
      return exal::cli::cmd_bench(bench, std::cout, std::cerr);
    });
  }
  if (*per_class_opt) exp.per_class = per_class;
  return exal::cli::cmd_export_images(exp, std::cout, std::cerr);
}
