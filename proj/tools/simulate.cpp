/*
 * Copyright 2026 The hybridcf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// simulate: runs a sweep or CDF experiment and writes the result table as CSV.
//
//   simulate [--config <path>] [--preset NAME] [--trials N] [--seed S] [--out <csv path>]
//
// Settings apply in order: preset, then config file, then command-line flags.
// Without --out the table goes to stdout. Exit codes: 0 success, 1 config
// error, 2 runtime or numerical error.

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hybridcf/config.hpp"
#include "hybridcf/harness.hpp"
#include "hybridcf/kernels.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid VLC/RF cell-free network simulator"};
  std::string config_path;
  std::string preset_name;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  bool list_presets = false;

  app.add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
  std::string preset_help = "Named experiment preset:";
  for (auto name : hybridcf::preset_names()) preset_help += " " + std::string(name);
  app.add_option("--preset", preset_name, preset_help);
  app.add_option("--trials", trials, "Monte Carlo trials per sweep point")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Base random seed");
  app.add_option("--out", out_path, "Output CSV path (default: stdout)");
  app.add_flag("--list-presets", list_presets, "Print the preset names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (list_presets) {
    for (auto name : hybridcf::preset_names()) std::cout << name << '\n';
    return 0;
  }

  hybridcf::ExperimentConfig cfg;
  try {
    if (!preset_name.empty()) cfg = hybridcf::preset(preset_name);
    if (!config_path.empty()) hybridcf::apply_config_file(cfg, config_path);
    if (trials) cfg.trials = *trials;
    if (seed) cfg.base.base_seed = *seed;
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    std::cerr << "experiment " << cfg.name << ": " << cfg.trials << " trials per point, kernels "
              << hybridcf::kernels::isa_name(hybridcf::kernels::active().isa) << '\n';
    const auto report = hybridcf::run_experiment(cfg);
    if (out_path.empty()) {
      if (cfg.output == hybridcf::OutputKind::kSweep) {
        hybridcf::write_sweep_csv(report, std::cout);
      } else {
        hybridcf::write_cdf_csv(report, std::cout);
      }
      std::cout.flush();
      if (!std::cout) throw std::runtime_error("failed writing to stdout");
    } else {
      hybridcf::write_report(report, cfg.output, out_path);
    }
  } catch (const hybridcf::TrialFailure& e) {
    std::cerr << "runtime error: " << e.what() << " (trial seed " << e.seed() << ")\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
