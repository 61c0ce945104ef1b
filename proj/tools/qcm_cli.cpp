// SPDX-License-Identifier: Apache-2.0
//
// qcm run --config FILE | --preset NAME --out DIR [--no-scatterer]
//         [--threads N] [--grid NX NY] [--extent L]
// qcm preset NAME      print a bundled scenario file
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 I/O error.

#include <CLI11.hpp>
#include <iostream>

#include "qcm/outputs.hpp"
#include "qcm/scenario.hpp"
#include "qcm/scenario_config.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Characteristic-mode quantum scattering simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset;
  std::string out_dir;
  bool no_scatterer = false;
  int threads = -1;
  std::vector<int> grid;
  double extent = 0.0;

  CLI::App* run = app.add_subcommand("run", "Run a scenario and write its outputs");
  auto* config_opt = run->add_option("--config", config_path, "Scenario file");
  auto* preset_opt = run->add_option("--preset", preset, "Bundled scenario (fig3, fig4, fig5)");
  config_opt->excludes(preset_opt);
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_flag("--no-scatterer", no_scatterer, "Free-space baseline (scatterer = none)");
  run->add_option("--threads", threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);
  run->add_option("--grid", grid, "Grid size NX NY")->expected(2);
  run->add_option("--extent", extent, "Square grid [-L, L]^2")->check(CLI::PositiveNumber);

  std::string preset_name;
  CLI::App* show = app.add_subcommand("preset", "Print a bundled scenario file");
  show->add_option("name", preset_name, "Preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*show) {
    try {
      std::cout << qcm::preset_text(preset_name);
      return 0;
    } catch (const qcm::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    }
  }

  qcm::ScenarioConfig config;
  try {
    if (config_path.empty() == preset.empty()) {
      throw qcm::ConfigError("give exactly one of --config or --preset");
    }
    config = preset.empty() ? qcm::parse_config(config_path) : qcm::load_preset(preset);
    if (no_scatterer) {
      config.scatterer = qcm::ScattererKind::none;
      config.transparent = false;
    }
    if (threads >= 0) config.threads = threads;
    if (!grid.empty()) {
      config.grid.nx = grid[0];
      config.grid.ny = grid[1];
    }
    if (extent > 0.0) {
      config.grid.x_min = config.grid.y_min = -extent;
      config.grid.x_max = config.grid.y_max = extent;
    }
    qcm::validate_config(config);
  } catch (const qcm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  qcm::ScenarioResult result;
  try {
    result = qcm::run_scenario(config);
  } catch (const qcm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }

  try {
    for (const auto& path : qcm::write_outputs(result, out_dir)) std::cout << path.string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
  for (const auto& w : result.manifest.warnings) std::cerr << "warning: " << w << "\n";
  return 0;
}
