// SPDX-License-Identifier: Apache-2.0

#include "qcm/circle_analytic.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "qcm/specfun.hpp"

namespace qcm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Y_n(ka) below this cannot accompany a genuine zero of J_n far above the
// turning point, so |J_n| < 1e-14 there is an internal resonance.
constexpr double kResonanceYBound = 1e6;

CircleModeEntry unscattered_entry() {
  return {kInf, Complex(0.0, 0.0), Complex(1.0, 0.0), CircleModeKind::unscattered};
}

CircleModeEntry entry_from_values(double j, double y, bool y_overflow) {
  if (y_overflow) return unscattered_entry();
  if (std::abs(j) < kResonanceTolerance && std::abs(y) < kResonanceYBound) {
    return {kInf, Complex(0.0, 0.0), Complex(1.0, 0.0), CircleModeKind::resonance};
  }
  if (j == 0.0) return unscattered_entry();
  const Complex h1(j, y);
  CircleModeEntry e;
  e.eigenvalue = -y / j;
  e.p = -j / h1;
  // J_n / Y_n below the double range
  if (e.p == 0.0 || !std::isfinite(e.eigenvalue)) return unscattered_entry();
  e.s = -std::conj(h1) / h1;
  return e;
}

Complex angular(int n, double phi) {
  return std::polar(1.0 / std::sqrt(2.0 * kPi), -n * phi);
}

// (-i)^n
Complex minus_i_power(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

void check_ka(double ka) {
  if (!(ka > 0.0) || !std::isfinite(ka)) throw DomainError("ka must be positive and finite");
}

// Radial part and H^(1) of order n at rho, with the exterior check.
struct RadialValues {
  double j = 0.0;
  Complex h1;
  bool h_valid = true;
};

RadialValues radial(int n, Point2 point, const CircleScatterer& s) {
  const double rho = point.norm();
  if (rho < s.radius * (1.0 - 1e-12)) throw DomainError("field point inside the cylinder");
  const int m = std::abs(n);
  const specfun::CylFunSweep sweep = specfun::cylinder_sweep(m, s.context.k * rho);
  RadialValues out;
  out.j = sweep.bessel_j(n);
  if (sweep.y_overflowed(m)) {
    out.h_valid = false;
  } else {
    out.h1 = sweep.hankel1(n);
  }
  return out;
}

}  // namespace

CircleModeEntry circle_mode(int n, double ka) {
  check_ka(ka);
  const int m = std::abs(n);
  const specfun::CylFunSweep sweep = specfun::cylinder_sweep(m, ka);
  const bool overflow = sweep.y_overflowed(m);
  return entry_from_values(sweep.j[static_cast<std::size_t>(m)],
                           overflow ? -kInf : sweep.y.values[static_cast<std::size_t>(m)],
                           overflow);
}

Complex circle_perturbation(int n, double ka) { return circle_mode(n, ka).p; }

double circle_eigenvalue(int n, double ka) { return circle_mode(n, ka).eigenvalue; }

int default_circle_n_max(double ka) {
  check_ka(ka);
  const int floor_order = static_cast<int>(std::ceil(ka)) + 12;
  int limit = static_cast<int>(2.0 * ka) + 60;
  for (;;) {
    const specfun::CylFunSweep sweep = specfun::cylinder_sweep(limit, ka);
    int last = -1;
    for (int n = 0; n <= limit; ++n) {
      const bool overflow = sweep.y_overflowed(n);
      const auto e = entry_from_values(sweep.j[static_cast<std::size_t>(n)],
                                       overflow ? -kInf : sweep.y.values[static_cast<std::size_t>(n)],
                                       overflow);
      if (std::abs(e.p) >= kRetentionThreshold) last = n;
    }
    if (last < limit) return std::max(floor_order, last);
    limit *= 2;
  }
}

const CircleModeEntry& CircleScatterer::entry(int n) const {
  static const CircleModeEntry kUnscattered = unscattered_entry();
  const int m = std::abs(n);
  if (m > n_max) return kUnscattered;
  return modes[static_cast<std::size_t>(m)];
}

Complex CircleScatterer::perturbation(int n) const { return entry(n).p; }

Complex CircleScatterer::scattering(int n) const { return entry(n).s; }

int CircleScatterer::highest_scattered() const {
  for (int n = n_max; n >= 0; --n) {
    if (modes[static_cast<std::size_t>(n)].p != 0.0) return n;
  }
  return -1;
}

CircleScatterer make_circle_scatterer(double radius, const WaveContext& ctx, int n_max,
                                      bool transparent) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("radius must be positive");
  CircleScatterer out;
  out.radius = radius;
  out.context = ctx;
  out.transparent = transparent;
  const double ka = ctx.k * radius;
  out.n_max = n_max < 0 ? default_circle_n_max(ka) : n_max;
  out.modes.resize(static_cast<std::size_t>(out.n_max) + 1);
  if (transparent) {
    for (auto& e : out.modes) e = unscattered_entry();
    return out;
  }
  const specfun::CylFunSweep sweep = specfun::cylinder_sweep(out.n_max, ka);
  for (int n = 0; n <= out.n_max; ++n) {
    const bool overflow = sweep.y_overflowed(n);
    out.modes[static_cast<std::size_t>(n)] =
        entry_from_values(sweep.j[static_cast<std::size_t>(n)],
                          overflow ? -kInf : sweep.y.values[static_cast<std::size_t>(n)], overflow);
  }
  return out;
}

Complex circle_basis_field(int n, Point2 point, const CircleScatterer& scatterer) {
  const RadialValues r = radial(n, point, scatterer);
  const Complex p = scatterer.perturbation(n);
  Complex value = r.j;
  if (p != 0.0) {
    if (!r.h_valid) throw NumericalError("Y_n overflow for a scattered mode");
    value += p * r.h1;
  }
  return value * angular(n, point.angle());
}

IncomingOutgoing circle_incoming_outgoing(int n, Point2 point, const CircleScatterer& scatterer) {
  const RadialValues r = radial(n, point, scatterer);
  if (!r.h_valid) throw NumericalError("Y_n overflow: incoming/outgoing split not representable");
  const Complex ang = angular(n, point.angle());
  return {0.5 * std::conj(r.h1) * ang, 0.5 * scatterer.scattering(n) * r.h1 * ang};
}

RadiationPattern circle_pattern(int n, std::span<const double> phi, const WaveContext& ctx) {
  RadiationPattern out;
  out.phi_grid.assign(phi.begin(), phi.end());
  out.normalization_constant = std::sqrt(kPi * ctx.omega * ctx.mu / 2.0);
  out.values.reserve(phi.size());
  const Complex lead = minus_i_power(n);
  for (double f : phi) out.values.push_back(lead * std::polar(1.0, -n * f));
  return out;
}

std::vector<Complex> composite_pattern_direct(std::span<const Complex> v, const CircleScatterer& s,
                                              std::span<const double> phi) {
  if (v.size() % 2 == 0) throw DomainError("coefficient array must have odd length");
  const int n_max = static_cast<int>(v.size() / 2);
  std::vector<Complex> out(phi.size(), 0.0);
  for (int n = -n_max; n <= n_max; ++n) {
    const Complex c = s.scattering(n) * v[static_cast<std::size_t>(n + n_max)] * minus_i_power(n);
    for (std::size_t i = 0; i < phi.size(); ++i) out[i] += c * std::polar(1.0, -n * phi[i]);
  }
  return out;
}

std::vector<Complex> composite_pattern_recurrence(std::span<const Complex> v,
                                                  const CircleScatterer& s,
                                                  std::span<const double> phi) {
  if (v.size() % 2 == 0) throw DomainError("coefficient array must have odd length");
  const int n_max = static_cast<int>(v.size() / 2);
  std::vector<Complex> out(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const Complex z = std::polar(1.0, -phi[i]);
    Complex acc = 0.0;
    for (int n = n_max; n >= -n_max; --n) {
      acc = acc * z + s.scattering(n) * v[static_cast<std::size_t>(n + n_max)] * minus_i_power(n);
    }
    out[i] = acc * std::polar(1.0, n_max * phi[i]);
  }
  return out;
}

}  // namespace qcm
