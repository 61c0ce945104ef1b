// SPDX-License-Identifier: Apache-2.0

#include "qcm/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "qcm/parallel.hpp"
#include "qcm/quadrature.hpp"

namespace qcm {
namespace {

int default_segments(const ShapeTag& shape, const WaveContext& ctx) {
  const int n = static_cast<int>(std::ceil(20.0 * perimeter(shape) / ctx.wavelength));
  return std::max(Contour::kMinSegments, (n + 3) / 4 * 4);
}

ShapeTag shape_of(const ScenarioConfig& c) {
  switch (c.scatterer) {
    case ScattererKind::ellipse: return EllipseShape{c.semi_x, c.semi_y};
    case ScattererKind::superellipse: return SuperellipseShape{c.semi_x, c.semi_y, c.exponent};
    default: return CircleShape{c.radius};
  }
}

}  // namespace

ScenarioModel::ScenarioModel(const ScenarioConfig& config)
    : config_(config),
      ctx_(WaveContext::from_wavelength(config.wavelength)),
      state_(build_state(config.state)) {
  validate_config(config_);
  const int threads = config_.threads;

  int floor_order = config_.n_max;
  if (config_.scatterer == ScattererKind::circle) {
    circle_ = std::make_unique<CircleScatterer>(
        make_circle_scatterer(config_.radius, ctx_, -1, config_.transparent));
    floor_order = std::max(floor_order, circle_->n_max);
    scattered_modes_ = circle_->highest_scattered() + 1;
  }

  std::vector<ModalCoefficients> raw;
  for (std::size_t b = 0; b < config_.beams.size(); ++b) {
    raw.push_back(excitation_coeffs(config_.beams[b].spec(), ctx_, config_.expansion, floor_order));
    for (const auto& w : raw.back().warnings) {
      warnings_.push_back("beam" + std::to_string(b + 1) + ": " + w);
    }
  }
  if (raw.size() == 2) {
    const PrincipalModePair pair = orthogonalize(raw[0], raw[1]);
    mu12_ = pair.mu12;
    gram_norm_ = pair.gram_norm;
    modes_ = {pair.v1, pair.v2_orth};
  } else {
    modes_ = std::move(raw);
  }
  for (const auto& m : modes_) n_max_ = std::max(n_max_, m.n_max);

  const bool mom = config_.scatterer == ScattererKind::ellipse ||
                   config_.scatterer == ScattererKind::superellipse;
  evaluator_ = std::make_unique<CircleFieldEvaluator>(ctx_, circle_.get(), modes_);
  if (!mom) return;

  const ShapeTag shape = shape_of(config_);
  const int requested = config_.mom_segments > 0 ? config_.mom_segments : default_segments(shape, ctx_);
  const Contour contour = discretize_contour(shape, ctx_, requested);
  if (contour.refined()) {
    warnings_.push_back("mom.segments raised to " + std::to_string(contour.size()) +
                        " for the wavelength/10 rule");
  }
  const ImpedanceMatrix z = assemble_impedance(contour, ctx_, threads);
  char_modes_ = std::make_unique<CharModeSet>(solve_modes(z, config_.mom_keep));
  if (char_modes_->discarded_directions > 0) {
    warnings_.push_back(std::to_string(char_modes_->discarded_directions) +
                        " non-radiating directions eliminated in the mode solve");
  }
  ModalScattering scattering = perturbation_and_scattering(char_modes_->eigenvalues);
  scattered_modes_ = 0;
  for (auto& p : scattering.p_diag) {
    if (std::abs(p) < kRetentionThreshold) {
      p = 0.0;
    } else {
      ++scattered_modes_;
    }
  }

  const auto mid = contour.midpoints();
  std::vector<std::vector<Complex>> incident(modes_.size(), std::vector<Complex>(mid.size()));
  std::vector<Complex> buffer(modes_.size());
  for (std::size_t j = 0; j < mid.size(); ++j) {
    evaluator_->totals(mid[j], buffer);
    for (std::size_t m = 0; m < modes_.size(); ++m) incident[m][j] = buffer[m];
  }
  for (std::size_t m = 0; m < modes_.size(); ++m) {
    const auto alpha = classical_scatter(*char_modes_, scattering, incident[m]);
    currents_.push_back(combine_currents(*char_modes_, alpha));
  }
  far_zone_rho_ = kFarZoneFactor * bounding_radius(shape);
}

std::string ScenarioModel::solver() const {
  if (char_modes_) return "method of moments (" + std::to_string(char_modes_->contour.size()) + " segments)";
  if (circle_) return circle_->transparent ? "circle, S forced to identity" : "circle, closed form";
  return "free space";
}

bool ScenarioModel::masked(Point2 p) const {
  if (char_modes_) return char_modes_->contour.contains_strictly(p) || p.norm() < far_zone_rho_;
  return evaluator_->inside(p);
}

FieldWeights ScenarioModel::weights(Point2 p) const {
  std::array<Complex, 2> totals{};
  evaluator_->totals(p, std::span<Complex>(totals.data(), modes_.size()));
  if (char_modes_) {
    for (std::size_t m = 0; m < modes_.size(); ++m) {
      totals[m] += current_field(char_modes_->contour, ctx_, currents_[m], p);
    }
  }
  return totals;
}

std::vector<std::vector<Complex>> ScenarioModel::outgoing_patterns(std::span<const double> phi) const {
  static const CircleScatterer kFreeSpace = make_circle_scatterer(1.0, WaveContext{}, 0, true);
  const CircleScatterer& s = (circle_ && !char_modes_) ? *circle_ : kFreeSpace;
  std::vector<std::vector<Complex>> out;
  for (std::size_t m = 0; m < modes_.size(); ++m) {
    std::vector<Complex> pattern = composite_pattern_direct(modes_[m].values, s, phi);
    if (char_modes_) {
      const auto f = current_far_transform(char_modes_->contour, ctx_, currents_[m], phi);
      const double scale = 0.5 * ctx_.omega * ctx_.mu * std::sqrt(2.0 * kPi);
      for (std::size_t i = 0; i < phi.size(); ++i) pattern[i] -= scale * f[i];
    }
    out.push_back(std::move(pattern));
  }
  return out;
}

FieldGrid evaluate_grid(const ScenarioModel& model, const GridSpec& spec, int threads) {
  FieldGrid g;
  g.spec = spec;
  for (int i = 0; i < spec.nx; ++i) g.xs.push_back(spec.x(i));
  for (int j = 0; j < spec.ny; ++j) g.ys.push_back(spec.y(j));
  const std::size_t count = static_cast<std::size_t>(spec.nx) * static_cast<std::size_t>(spec.ny);
  g.v1.assign(count, 0.0);
  g.v2.assign(count, 0.0);
  g.g1.assign(count, 0.0);
  g.g2.assign(count, 0.0);
  g.g1_mask.assign(count, 0);
  g.g2_mask.assign(count, 0);
  std::vector<double> numerator(count, 0.0);

  const FockState& state = model.state();
  parallel_for(static_cast<int>(count), threads, [&](int idx) {
    const auto k = static_cast<std::size_t>(idx);
    const Point2 p{g.xs[k % g.xs.size()], g.ys[k / g.xs.size()]};
    if (model.masked(p)) {
      g.g1_mask[k] = 1;
      return;
    }
    const FieldWeights w = model.weights(p);
    g.v1[k] = w[0];
    g.v2[k] = w[1];
    const FockState once = apply_Eplus(state, w);
    g.g1[k] = once.norm2();
    numerator[k] = apply_Eplus(once, w).norm2();
  });

  double peak = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    if (!g.g1_mask[k]) peak = std::max(peak, g.g1[k]);
  }
  const double floor = kIntensityFloor * peak;
  for (std::size_t k = 0; k < count; ++k) {
    if (g.g1_mask[k] || !(g.g1[k] > floor)) {
      g.g2_mask[k] = 1;
      g.g2[k] = 0.0;
    } else {
      g.g2[k] = numerator[k] / (g.g1[k] * g.g1[k]);
    }
  }
  return g;
}

LineMap evaluate_line(const ScenarioModel& model, const LineSpec& spec, int threads) {
  LineMap line;
  line.spec = spec;
  const auto n = static_cast<std::size_t>(spec.n);
  for (int j = 0; j < spec.n; ++j) line.ys.push_back(spec.y(j));
  std::vector<FieldWeights> w(n);
  line.g1.assign(n, 0.0);
  line.g1_mask.assign(n, 0);
  parallel_for(spec.n, threads, [&](int j) {
    const auto k = static_cast<std::size_t>(j);
    const Point2 p{spec.x, line.ys[k]};
    if (model.masked(p)) {
      line.g1_mask[k] = 1;
      return;
    }
    w[k] = model.weights(p);
    line.g1[k] = apply_Eplus(model.state(), w[k]).norm2();
  });
  double peak = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!line.g1_mask[k]) peak = std::max(peak, line.g1[k]);
  }
  const double floor = kIntensityFloor * peak;

  line.g2.assign(n * n, 0.0);
  line.g2_mask.assign(n * n, 1);
  parallel_for(spec.n, threads, [&](int jj) {
    const auto j = static_cast<std::size_t>(jj);
    for (std::size_t i = 0; i <= j; ++i) {
      if (line.g1_mask[i] || line.g1_mask[j]) continue;
      const auto v = g2_from_weights(model.state(), w[i], w[j], floor);
      if (!v) continue;
      // upper triangle is mirrored below, after the parallel section
      line.g2[j * n + i] = *v;
      line.g2_mask[j * n + i] = 0;
    }
  });
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j + 1; i < n; ++i) {
      line.g2[j * n + i] = line.g2[i * n + j];
      line.g2_mask[j * n + i] = line.g2_mask[i * n + j];
    }
  }
  return line;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const ScenarioModel model(config);
  const int threads = config.threads;

  ScenarioResult result;
  RunManifest& m = result.manifest;
  m.config = config;
  m.solver = model.solver();
  m.n_max_used = model.n_max();
  for (const auto& mode : model.modes()) m.tail_estimates.push_back(mode.tail_estimate);
  m.mu12 = model.mu12();
  m.gram_norm = model.gram_norm();
  m.scattered_modes = model.scattered_mode_count();
  m.warnings = model.warnings();

  if (config.outputs.g1_map || config.outputs.g2_map) {
    result.grid = evaluate_grid(model, config.grid, threads);
    const FieldGrid& g = *result.grid;
    for (std::size_t k = 0; k < g.g1.size(); ++k) {
      if (!g.g1_mask[k]) m.g1_max = std::max(m.g1_max, g.g1[k]);
      m.g1_masked += g.g1_mask[k];
      m.g2_masked += g.g2_mask[k];
    }
    if (m.g1_masked == g.g1.size()) m.warnings.push_back("every grid pixel is masked");
  }
  if (config.outputs.g2_line) result.line = evaluate_line(model, config.line, threads);
  if (config.outputs.patterns) {
    PatternTable t;
    t.phi = uniform_angles(config.pattern_samples);
    t.modes = model.outgoing_patterns(t.phi);
    result.patterns = std::move(t);
  }
  m.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace qcm
