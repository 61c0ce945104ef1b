// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcm/beams.hpp"
#include "qcm/circle_analytic.hpp"
#include "qcm/cm_core.hpp"
#include "qcm/quantum.hpp"
#include "qcm/scenario_config.hpp"

namespace qcm {

// Non-circular scatterers are evaluated only where k rho >= this factor times
// k a, with a the bounding radius.
inline constexpr double kFarZoneFactor = 10.0;
inline constexpr double kIntensityFloor = 1e-12;

// Everything upstream of the pixel loop: beams, principal modes, scatterer
// and (for non-circular contours) the induced currents of each mode.
class ScenarioModel {
 public:
  explicit ScenarioModel(const ScenarioConfig& config);

  const ScenarioConfig& config() const { return config_; }
  const WaveContext& context() const { return ctx_; }
  const FockState& state() const { return state_; }
  int mode_count() const { return static_cast<int>(modes_.size()); }
  const std::vector<ModalCoefficients>& modes() const { return modes_; }
  int n_max() const { return n_max_; }
  std::optional<Complex> mu12() const { return mu12_; }
  double gram_norm() const { return gram_norm_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::string solver() const;
  const CircleScatterer* circle() const { return circle_.get(); }
  const CharModeSet* char_modes() const { return char_modes_.get(); }
  int scattered_mode_count() const { return scattered_modes_; }

  // Interior points, and points outside the far zone for MoM contours.
  bool masked(Point2 p) const;
  // Mode field values v_j(p); unused slots are 0. p must not be masked.
  FieldWeights weights(Point2 p) const;
  // Outgoing far patterns of the mode fields, sum |.|^2 mean = 1 when unitary.
  std::vector<std::vector<Complex>> outgoing_patterns(std::span<const double> phi) const;

 private:
  ScenarioConfig config_;
  WaveContext ctx_;
  FockState state_;
  std::vector<ModalCoefficients> modes_;
  int n_max_ = 0;
  std::optional<Complex> mu12_;
  double gram_norm_ = 1.0;
  std::vector<std::string> warnings_;

  std::unique_ptr<CircleScatterer> circle_;
  std::unique_ptr<CircleFieldEvaluator> evaluator_;
  // MoM path
  std::unique_ptr<CharModeSet> char_modes_;
  std::vector<std::vector<Complex>> currents_;  // induced current per mode
  double far_zone_rho_ = 0.0;
  int scattered_modes_ = 0;
};

struct FieldGrid {
  GridSpec spec;
  std::vector<double> xs;
  std::vector<double> ys;
  // Row-major, index j * nx + i with y = ys[j], x = xs[i].
  std::vector<Complex> v1;
  std::vector<Complex> v2;
  std::vector<double> g1;
  std::vector<double> g2;
  std::vector<std::uint8_t> g1_mask;
  std::vector<std::uint8_t> g2_mask;

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(spec.nx) + static_cast<std::size_t>(i);
  }
};

// g2 over detector pairs on x = line.x; entry (i, j) at index j * n + i is
// g2((x, y_i), (x, y_j)).
struct LineMap {
  LineSpec spec;
  std::vector<double> ys;
  std::vector<double> g1;
  std::vector<std::uint8_t> g1_mask;
  std::vector<double> g2;
  std::vector<std::uint8_t> g2_mask;
};

struct PatternTable {
  std::vector<double> phi;
  std::vector<std::vector<Complex>> modes;
};

struct RunManifest {
  ScenarioConfig config;
  std::string solver;
  int n_max_used = 0;
  std::vector<double> tail_estimates;
  std::optional<Complex> mu12;
  double gram_norm = 1.0;
  int scattered_modes = 0;
  double g1_max = 0.0;
  std::size_t g1_masked = 0;
  std::size_t g2_masked = 0;
  std::vector<std::string> warnings;
  double wall_clock_s = 0.0;
};

struct ScenarioResult {
  std::optional<FieldGrid> grid;
  std::optional<LineMap> line;
  std::optional<PatternTable> patterns;
  RunManifest manifest;
};

FieldGrid evaluate_grid(const ScenarioModel& model, const GridSpec& spec, int threads);
LineMap evaluate_line(const ScenarioModel& model, const LineSpec& spec, int threads);

ScenarioResult run_scenario(const ScenarioConfig& config);

}  // namespace qcm
