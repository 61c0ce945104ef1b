// SPDX-License-Identifier: Apache-2.0

#include "qcm/beams.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "qcm/quadrature.hpp"
#include "qcm/specfun.hpp"

namespace qcm {
namespace {

Complex i_power(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

Complex delta_factor(ExpansionOrder order, Complex kappa, int n) {
  if (order == ExpansionOrder::leading) return 1.0;
  const double n2 = static_cast<double>(n) * n;
  return 1.0 - 2.0 * kappa * kappa * n2 + (4.0 / 3.0) * kappa * kappa * kappa * n2 * n2;
}

// Above this |Y_{n_max}| the incoming and outgoing halves cancel to fewer
// than ~10 significant digits.
constexpr double kSplitYBound = 1e6;

// Spectral band beyond which exp(-alpha^2 / 4 beta^2) is below 1e-16.
constexpr double kSpectralHalfWidth = 12.2;

}  // namespace

Complex GaussianBeamSpec::kappa(const WaveContext& ctx) const {
  const double q = beta / ctx.k;
  return q * q / Complex(1.0, xi(ctx));
}

bool check_wide_beam(const GaussianBeamSpec& beam, const WaveContext& ctx) {
  if (!(beam.beta > 0.0) || !std::isfinite(beam.beta)) throw DomainError("beam beta must be positive");
  if (!std::isfinite(beam.amplitude) || !std::isfinite(beam.x0) || !std::isfinite(beam.theta)) {
    throw DomainError("beam parameters must be finite");
  }
  const double ratio = beam.beta * ctx.wavelength;
  if (ratio > kWideBeamLimit) {
    std::ostringstream msg;
    msg << "beam too narrow for the wide-beam expansion: beta*wavelength = " << ratio << " > "
        << kWideBeamLimit;
    throw DomainError(msg.str());
  }
  return ratio > kWideBeamWarn;
}

ModalCoefficients ModalCoefficients::zeros(int n_max) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  ModalCoefficients c;
  c.n_max = n_max;
  c.values.assign(2 * static_cast<std::size_t>(n_max) + 1, 0.0);
  return c;
}

Complex ModalCoefficients::at(int n) const {
  if (std::abs(n) > n_max) return 0.0;
  return values[static_cast<std::size_t>(n + n_max)];
}

Complex& ModalCoefficients::at(int n) {
  if (std::abs(n) > n_max) throw DomainError("harmonic order outside the coefficient range");
  return values[static_cast<std::size_t>(n + n_max)];
}

double ModalCoefficients::norm2() const {
  double s = 0.0;
  for (const Complex& v : values) s += std::norm(v);
  return s;
}

ModalCoefficients ModalCoefficients::padded(int new_n_max) const {
  if (new_n_max < n_max) throw DomainError("padding cannot shrink the coefficient range");
  ModalCoefficients out = *this;
  out.n_max = new_n_max;
  out.values.assign(2 * static_cast<std::size_t>(new_n_max) + 1, 0.0);
  for (int n = -n_max; n <= n_max; ++n) out.values[static_cast<std::size_t>(n + new_n_max)] = at(n);
  return out;
}

int beam_n_max(const GaussianBeamSpec& beam, const WaveContext& ctx) {
  const double re = beam.kappa(ctx).real();
  if (!(re > 0.0)) throw DomainError("beam kappa must have a positive real part");
  return static_cast<int>(std::floor(std::sqrt(-std::log(kBeamTruncation) / (2.0 * re)))) + 1;
}

ModalCoefficients excitation_coeffs(const GaussianBeamSpec& beam, const WaveContext& ctx,
                                    ExpansionOrder order, int n_max_floor) {
  const bool narrow = check_wide_beam(beam, ctx);
  const Complex kappa = beam.kappa(ctx);
  const int n_max = std::max(beam_n_max(beam, ctx), n_max_floor);

  ModalCoefficients c = ModalCoefficients::zeros(n_max);
  for (int n = -n_max; n <= n_max; ++n) {
    c.at(n) = i_power(n) * delta_factor(order, kappa, n) *
              std::exp(-kappa * (static_cast<double>(n) * n));
  }
  const double total = c.norm2();
  double tail = 0.0;
  for (int n = n_max + 1; n <= 4 * n_max + 8; ++n) {
    const double t = std::norm(delta_factor(order, kappa, n) *
                               std::exp(-kappa * (static_cast<double>(n) * n)));
    tail += 2.0 * t;
    if (t < 1e-40 * total) break;
  }
  c.tail_estimate = tail / (total + tail);

  const double norm = 1.0 / std::sqrt(total);
  for (int n = -n_max; n <= n_max; ++n) c.at(n) *= norm * std::polar(1.0, n * beam.theta);

  const Complex envelope =
      beam.amplitude * std::polar(1.0, ctx.k * beam.x0) / std::sqrt(Complex(1.0, beam.xi(ctx)));
  c.field_scale = envelope * std::sqrt(2.0 * kPi) / norm;

  if (narrow) c.warnings.push_back("beta*wavelength above 0.05: wide-beam expansion degraded");
  if (order == ExpansionOrder::cubic && std::abs(delta_factor(order, kappa, n_max) - 1.0) > 0.3) {
    c.warnings.push_back("cubic correction exceeds 0.3 at the truncation edge");
  }
  return c;
}

Complex beam_field_direct(const GaussianBeamSpec& beam, const WaveContext& ctx, Point2 point) {
  check_wide_beam(beam, ctx);
  const double ct = std::cos(beam.theta);
  const double st = std::sin(beam.theta);
  // Coordinates in the beam frame (propagation along +x').
  const double x = ct * point.x + st * point.y;
  const double y = -st * point.x + ct * point.y;
  const double k = ctx.k;
  const double band = std::min(k, kSpectralHalfWidth * beam.beta);
  const double inv4b2 = 1.0 / (4.0 * beam.beta * beam.beta);

  const GaussRule& rule = gauss_legendre_cached(16);
  auto integrate = [&](int panels) {
    Complex sum = 0.0;
    const double h = 2.0 * band / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = -band + (p + 0.5) * h;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double a = mid + 0.5 * h * rule.nodes[i];
        const double kz = std::sqrt(std::max(0.0, k * k - a * a));
        sum += rule.weights[i] * std::exp(-a * a * inv4b2) *
               std::polar(1.0, kz * (x + beam.x0) + a * y);
      }
    }
    return sum * (0.5 * h);
  };

  const double prefactor = beam.amplitude / (2.0 * beam.beta * std::sqrt(kPi));
  const double tol = 1e-13 * std::max(std::abs(beam.amplitude), 1e-300);
  Complex prev = prefactor * integrate(8);
  for (int panels = 16; panels <= 8192; panels *= 2) {
    const Complex next = prefactor * integrate(panels);
    if (std::abs(next - prev) <= tol) return next;
    prev = next;
  }
  std::ostringstream msg;
  msg << "beam spectral quadrature did not converge at (" << point.x << ", " << point.y
      << "), last value " << prev;
  throw NumericalError(msg.str());
}

ModalCoefficients rotate_coeffs(const ModalCoefficients& c, double theta) {
  ModalCoefficients out = c;
  if (theta == 0.0) return out;
  for (int n = -c.n_max; n <= c.n_max; ++n) out.at(n) = c.at(n) * std::polar(1.0, n * theta);
  return out;
}

Complex overlap(const ModalCoefficients& c1, const ModalCoefficients& c2) {
  const int n = std::min(c1.n_max, c2.n_max);
  Complex s = 0.0;
  for (int m = -n; m <= n; ++m) s += c2.at(m) * std::conj(c1.at(m));
  return s;
}

PrincipalModePair orthogonalize(const ModalCoefficients& c1, const ModalCoefficients& c2) {
  const int n_max = std::max(c1.n_max, c2.n_max);
  PrincipalModePair out;
  out.v1 = c1.padded(n_max);
  const ModalCoefficients b = c2.padded(n_max);
  out.mu12 = overlap(out.v1, b);
  const double m = std::abs(out.mu12);
  if (!(m < kDegenerateOverlap)) {
    std::ostringstream msg;
    msg << "degenerate beams: |mu12| = " << m << " (modes are not distinguishable)";
    throw NumericalError(msg.str());
  }
  out.gram_norm = std::sqrt(1.0 - m * m);
  out.v2_orth = ModalCoefficients::zeros(n_max);
  out.v2_orth.tail_estimate = b.tail_estimate;
  out.v2_orth.warnings = b.warnings;
  if (out.mu12 == 0.0) {
    out.v2_orth.values = b.values;
    return out;
  }
  for (std::size_t i = 0; i < b.values.size(); ++i) {
    out.v2_orth.values[i] = (b.values[i] - out.mu12 * out.v1.values[i]) / out.gram_norm;
  }
  const double renorm = 1.0 / std::sqrt(out.v2_orth.norm2());
  for (auto& v : out.v2_orth.values) v *= renorm;
  return out;
}

CircleFieldEvaluator::CircleFieldEvaluator(const WaveContext& ctx, const CircleScatterer* scatterer,
                                           std::vector<ModalCoefficients> modes)
    : ctx_(ctx), scatterer_(scatterer), modes_(std::move(modes)) {
  if (modes_.empty()) throw DomainError("evaluator needs at least one coefficient set");
  for (const auto& m : modes_) n_max_ = std::max(n_max_, m.n_max);
  for (auto& m : modes_) m = m.padded(n_max_);
}

bool CircleFieldEvaluator::inside(Point2 point) const {
  return scatterer_ != nullptr && point.norm() < scatterer_->radius * (1.0 - 1e-12);
}

void CircleFieldEvaluator::totals(Point2 point, std::span<Complex> out) const {
  if (out.size() != modes_.size()) throw DomainError("output span size mismatch");
  if (inside(point)) throw DomainError("field point inside the cylinder");
  const double x = ctx_.k * point.norm();
  const double phi = point.angle();
  const std::vector<double> j = specfun::bessel_j_sweep(n_max_, x);
  const int hs = scatterer_ ? std::min(scatterer_->highest_scattered(), n_max_) : -1;
  specfun::NeumannSweep y;
  if (hs >= 0) y = specfun::bessel_y_sweep(hs, x);

  for (auto& o : out) o = 0.0;
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * kPi);
  for (int n = 0; n <= n_max_; ++n) {
    const auto un = static_cast<std::size_t>(n);
    Complex radial = j[un];
    if (n <= hs) {
      const Complex p = scatterer_->perturbation(n);
      if (p != 0.0) {
        if (y.overflowed(n)) throw NumericalError("Y_n overflow for a scattered mode");
        radial += p * Complex(j[un], y.values[un]);
      }
    }
    if (radial == 0.0) continue;
    const Complex e = std::polar(inv_sqrt_2pi, -n * phi);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t m = 0; m < modes_.size(); ++m) {
      const ModalCoefficients& c = modes_[m];
      Complex angular = c.values[un + static_cast<std::size_t>(n_max_)] * e;
      if (n > 0) angular += sign * c.values[static_cast<std::size_t>(n_max_ - n)] * std::conj(e);
      out[m] += radial * angular;
    }
  }
}

std::vector<PrincipalField> CircleFieldEvaluator::fields(Point2 point) const {
  std::vector<Complex> tot(modes_.size());
  totals(point, tot);
  std::vector<PrincipalField> out(modes_.size());
  for (std::size_t m = 0; m < out.size(); ++m) out[m].total = tot[m];

  const double x = ctx_.k * point.norm();
  const double phi = point.angle();
  bool valid = x > 0.0;
  specfun::CylFunSweep sweep;
  if (valid) {
    sweep = specfun::cylinder_sweep(n_max_, x);
    valid = !sweep.y_overflowed(n_max_) && std::abs(sweep.y.values[static_cast<std::size_t>(n_max_)]) <= kSplitYBound;
  }
  if (!valid) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (auto& f : out) {
      f.incoming = f.outgoing = Complex(nan, nan);
      f.split_valid = false;
    }
    return out;
  }
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * kPi);
  for (int n = -n_max_; n <= n_max_; ++n) {
    const Complex h1 = sweep.hankel1(n);
    const Complex s = scatterer_ ? scatterer_->scattering(n) : Complex(1.0, 0.0);
    const Complex e = std::polar(inv_sqrt_2pi, -n * phi);
    for (std::size_t m = 0; m < modes_.size(); ++m) {
      const Complex v = modes_[m].values[static_cast<std::size_t>(n + n_max_)] * e;
      out[m].incoming += 0.5 * v * std::conj(h1);
      out[m].outgoing += 0.5 * v * s * h1;
    }
  }
  return out;
}

PrincipalField principal_fields(const ModalCoefficients& c, const CircleScatterer& scatterer,
                                Point2 point) {
  return CircleFieldEvaluator(scatterer.context, &scatterer, {c}).fields(point).front();
}

PrincipalField free_space_fields(const ModalCoefficients& c, const WaveContext& ctx, Point2 point) {
  return CircleFieldEvaluator(ctx, nullptr, {c}).fields(point).front();
}

}  // namespace qcm
