// SPDX-License-Identifier: Apache-2.0
//
// Flat "key = value" scenario files. '#' starts a comment; blank lines are
// ignored; every key may appear once; unknown keys are rejected.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcm/beams.hpp"
#include "qcm/quantum.hpp"

namespace qcm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ScattererKind { none, circle, ellipse, superellipse };

std::string scatterer_kind_name(ScattererKind kind);

struct BeamConfig {
  double amplitude = 1.0;
  double beta = 0.04;
  double x0 = 0.0;
  double theta_deg = 0.0;

  GaussianBeamSpec spec() const;
};

struct GridSpec {
  double x_min = -25.0;
  double x_max = 25.0;
  double y_min = -25.0;
  double y_max = 25.0;
  int nx = 251;
  int ny = 251;

  double x(int i) const { return x_min + (x_max - x_min) * i / (nx - 1); }
  double y(int j) const { return y_min + (y_max - y_min) * j / (ny - 1); }
};

// Both detectors on the line x = const, y1 and y2 swept over [y_min, y_max].
struct LineSpec {
  double x = 12.0;
  double y_min = -25.0;
  double y_max = 25.0;
  int n = 201;

  double y(int j) const { return y_min + (y_max - y_min) * j / (n - 1); }
};

struct OutputSet {
  bool g1_map = true;
  bool g2_map = true;
  bool g2_line = false;
  bool patterns = false;
};

struct ScenarioConfig {
  std::string name = "custom";
  ScattererKind scatterer = ScattererKind::none;
  bool transparent = false;  // circle with S = 1
  double radius = 5.0;
  double semi_x = 5.0;
  double semi_y = 3.0;
  double exponent = 4.0;
  double wavelength = 1.0;
  std::vector<BeamConfig> beams{BeamConfig{}, BeamConfig{1.0, 0.04, 0.0, 45.0}};
  StateKind state = StateKind::single_photon_pair;
  ExpansionOrder expansion = ExpansionOrder::cubic;
  GridSpec grid;
  LineSpec line;
  OutputSet outputs;
  int n_max = 0;          // lower bound on the harmonic range (0: automatic)
  int mom_segments = 0;   // 0: 20 segments per wavelength
  int mom_keep = 0;       // 0: all radiating modes
  int pattern_samples = 720;
  int threads = 1;
};

ScenarioConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
ScenarioConfig parse_config(const std::filesystem::path& path);

// Resolved configuration as parseable text; parse(serialize(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

std::vector<std::string> preset_names();
// Throws ConfigError for unknown names.
std::string preset_text(const std::string& name);
ScenarioConfig load_preset(const std::string& name);

// Cross-field checks shared by the parser and command-line overrides.
void validate_config(const ScenarioConfig& config);

}  // namespace qcm
