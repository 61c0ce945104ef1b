// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "beam_checks.hpp"
#include "qcm/beams.hpp"
#include "qcm/quadrature.hpp"

using namespace qcm;

namespace {

GaussianBeamSpec beam_at(double theta, double x0 = 0.0, double beta = 0.04) {
  GaussianBeamSpec b;
  b.beta = beta;
  b.x0 = x0;
  b.theta = theta;
  return b;
}

}  // namespace

TEST_CASE("spectral parameters") {
  const WaveContext ctx{};
  const GaussianBeamSpec b = beam_at(0.0);
  CHECK(b.xi(ctx) == 0.0);
  CHECK(b.kappa(ctx).real() == doctest::Approx(4.0528e-5).epsilon(1e-4));
  CHECK(b.kappa(ctx).imag() == 0.0);
  CHECK(std::abs(b.kappa(ctx) - std::pow(1.0 / (50.0 * kPi), 2)) < 1e-18);
  const GaussianBeamSpec off = beam_at(0.0, 5.0);
  CHECK(off.xi(ctx) == doctest::Approx(2.0 * 0.04 * 0.04 * 5.0 / (2.0 * kPi)));
  CHECK(beam_n_max(b, ctx) == 477);
}

TEST_CASE("coefficients are normalized and even") {
  const WaveContext ctx{};
  for (auto order : {ExpansionOrder::leading, ExpansionOrder::cubic}) {
    const ModalCoefficients c = excitation_coeffs(beam_at(0.0), ctx, order);
    CHECK(std::abs(c.norm2() - 1.0) < 1e-10);
    CHECK(c.tail_estimate < 1e-6);
    CHECK(c.warnings.empty());
    for (int n = 1; n <= c.n_max; ++n) CHECK(std::abs(c.at(n)) == doctest::Approx(std::abs(c.at(-n))).epsilon(1e-14));
    CHECK(c.at(c.n_max + 3) == Complex(0.0));
  }
  const ModalCoefficients floorless = excitation_coeffs(beam_at(0.0), ctx, ExpansionOrder::cubic, 600);
  CHECK(floorless.n_max == 600);
}

TEST_CASE("wide-beam guard") {
  const WaveContext ctx{};
  CHECK_FALSE(check_wide_beam(beam_at(0.0), ctx));
  CHECK(check_wide_beam(beam_at(0.0, 0.0, 0.1), ctx));
  CHECK_THROWS_AS(check_wide_beam(beam_at(0.0, 0.0, 0.25), ctx), DomainError);
  CHECK_THROWS_AS(excitation_coeffs(beam_at(0.0, 0.0, -0.01), ctx, ExpansionOrder::cubic), DomainError);
  const ModalCoefficients c = excitation_coeffs(beam_at(0.0, 0.0, 0.1), ctx, ExpansionOrder::cubic);
  CHECK_FALSE(c.warnings.empty());
}

TEST_CASE("spectral integral reproduces the waist profile") {
  const WaveContext ctx{};
  for (double x0 : {0.0, 5.0}) {
    const GaussianBeamSpec b = beam_at(0.0, x0);
    for (double y : {0.0, 5.0, 12.5, 25.0, 40.0}) {
      const Complex e = beam_field_direct(b, ctx, {-x0, y});
      CHECK(std::abs(e - std::exp(-b.beta * b.beta * y * y)) < 1e-2);
    }
  }
  // spreading past the waist
  const GaussianBeamSpec b = beam_at(0.0, 0.0, 0.1);
  double last = std::abs(beam_field_direct(b, ctx, {0.0, 0.0}));
  for (double x : {20.0, 60.0, 150.0, 400.0}) {
    const double a = std::abs(beam_field_direct(b, ctx, {x, 0.0}));
    CHECK(a < last);
    last = a;
  }
}

TEST_CASE("modal sum matches the spectral integral on the waist line") {
  for (double beta : {0.02, 0.04}) {
    for (double x0 : {0.0, 5.0}) {
      CAPTURE(beta);
      CAPTURE(x0);
      const double lead = beam_checks::waist_line_error(beam_at(0.0, x0, beta), ExpansionOrder::leading);
      const double cubic = beam_checks::waist_line_error(beam_at(0.0, x0, beta), ExpansionOrder::cubic);
      CHECK(lead <= 0.02);
      CHECK(cubic <= 0.01);
      CHECK(cubic <= lead);
    }
  }
}

TEST_CASE("rotated beams") {
  const WaveContext ctx{};
  const double theta = kPi / 4;
  CHECK(beam_checks::waist_line_error(beam_at(theta), ExpansionOrder::cubic) <= 0.02);
  CHECK(beam_checks::waist_line_error(beam_at(-2.0, 3.0), ExpansionOrder::cubic) <= 0.02);

  const ModalCoefficients c = excitation_coeffs(beam_at(0.0), ctx, ExpansionOrder::cubic);
  const ModalCoefficients r = excitation_coeffs(beam_at(theta), ctx, ExpansionOrder::cubic);
  const ModalCoefficients rr = rotate_coeffs(c, theta);
  for (int n = -c.n_max; n <= c.n_max; ++n) CHECK(std::abs(rr.at(n) - r.at(n)) < 1e-14);

  const ModalCoefficients full = rotate_coeffs(c, 2.0 * kPi);
  const ModalCoefficients none = rotate_coeffs(c, 0.0);
  const ModalCoefficients ab = rotate_coeffs(rotate_coeffs(c, 0.3), 1.1);
  const ModalCoefficients sum = rotate_coeffs(c, 1.4);
  for (int n = -c.n_max; n <= c.n_max; ++n) {
    CHECK(std::abs(full.at(n) - c.at(n)) < 1e-12);
    CHECK(none.at(n) == c.at(n));
    CHECK(std::abs(ab.at(n) - sum.at(n)) < 1e-12);
  }
}

TEST_CASE("overlap and orthogonalization") {
  const WaveContext ctx{};
  const ModalCoefficients c1 = excitation_coeffs(beam_at(0.0), ctx, ExpansionOrder::cubic);
  const ModalCoefficients c2 = excitation_coeffs(beam_at(kPi / 4), ctx, ExpansionOrder::cubic);
  CHECK(std::abs(overlap(c1, c1) - 1.0) < 1e-12);
  const Complex mu = overlap(c1, c2);
  CHECK(std::abs(mu) < 0.05);
  CHECK(std::abs(overlap(c2, c1) - std::conj(mu)) < 1e-15);

  // generic pair with a sizeable overlap
  const ModalCoefficients c3 = excitation_coeffs(beam_at(0.005), ctx, ExpansionOrder::cubic);
  const PrincipalModePair p = orthogonalize(c1, c3);
  CHECK(std::abs(p.mu12) > 0.1);
  CHECK(std::abs(overlap(p.v1, p.v2_orth)) < 1e-10);
  CHECK(std::abs(p.v2_orth.norm2() - 1.0) < 1e-10);
  CHECK(p.gram_norm == doctest::Approx(std::sqrt(1.0 - std::norm(p.mu12))));

  // disjoint supports
  ModalCoefficients a = ModalCoefficients::zeros(4);
  ModalCoefficients b = ModalCoefficients::zeros(4);
  a.at(-1) = a.at(2) = std::sqrt(0.5);
  b.at(0) = Complex(0.0, 1.0);
  CHECK(overlap(a, b) == Complex(0.0));
  const PrincipalModePair ob = orthogonalize(a, b);
  for (int n = -4; n <= 4; ++n) CHECK(std::abs(ob.v2_orth.at(n) - b.at(n)) < 1e-12);

  CHECK_THROWS_AS(orthogonalize(c1, c1), NumericalError);
  // mismatched ranges are zero padded
  const ModalCoefficients wide = c1.padded(c1.n_max + 20);
  CHECK(std::abs(overlap(wide, c1) - 1.0) < 1e-12);
}

TEST_CASE("coefficient overlap equals the far-pattern inner product") {
  const WaveContext ctx{};
  const ModalCoefficients c1 = excitation_coeffs(beam_at(0.0), ctx, ExpansionOrder::cubic);
  const ModalCoefficients c2 = excitation_coeffs(beam_at(0.3, 2.0), ctx, ExpansionOrder::leading);
  const CircleScatterer free_space = make_circle_scatterer(1.0, ctx, 0, true);
  const auto phi = uniform_angles(2 * c1.n_max + 64);
  const auto p1 = composite_pattern_direct(c1.values, free_space, phi);
  const auto p2 = composite_pattern_direct(c2.padded(c1.n_max).values, free_space, phi);
  Complex inner = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) inner += std::conj(p1[i]) * p2[i];
  inner /= static_cast<double>(phi.size());
  CHECK(std::abs(inner - overlap(c1, c2)) < 1e-8);
}

TEST_CASE("principal fields around a cylinder") {
  const WaveContext ctx{};
  const CircleScatterer cyl = make_circle_scatterer(5.0, ctx);
  const ModalCoefficients c =
      excitation_coeffs(beam_at(0.0), ctx, ExpansionOrder::cubic, cyl.n_max);
  const CircleFieldEvaluator eval(ctx, &cyl, {c});

  double peak = 0.0;
  for (double x = -20.0; x <= 20.0; x += 4.0) {
    for (double y = -20.0; y <= 20.0; y += 4.0) {
      if (std::hypot(x, y) < 5.0) continue;
      Complex v;
      eval.totals({x, y}, std::span<Complex>(&v, 1));
      peak = std::max(peak, std::abs(v));
    }
  }
  double wall = 0.0;
  for (int i = 0; i < 90; ++i) {
    Complex v;
    eval.totals(from_polar(5.0, 2.0 * kPi * i / 90), std::span<Complex>(&v, 1));
    wall = std::max(wall, std::abs(v));
  }
  CHECK(wall < 1e-3 * peak);
  CHECK(eval.inside({1.0, 1.0}));
  CHECK_THROWS_AS(eval.totals({1.0, 1.0}, std::span<Complex>()), DomainError);

  // the split adds up; the far zone carries equal in and out flux
  const PrincipalField f = principal_fields(c, cyl, {60.0, 80.0});
  CHECK(f.split_valid);
  CHECK(std::abs(f.incoming + f.outgoing - f.total) < 1e-10 * (1.0 + std::abs(f.total)));
  const auto phi = uniform_angles(2 * c.n_max + 64);
  const auto out = composite_pattern_direct(c.values, cyl, phi);
  double flux_out = 0.0;
  for (const Complex v : out) flux_out += std::norm(v);
  flux_out /= static_cast<double>(phi.size());
  CHECK(std::abs(flux_out - c.norm2()) < 1e-6);

  // free space: total field reproduces the beam
  const PrincipalField g = free_space_fields(c, ctx, {3.0, -7.0});
  const Complex direct = beam_field_direct(beam_at(0.0), ctx, {3.0, -7.0});
  CHECK(std::abs(c.field_scale * g.total - direct) < 0.02);
  // close to the origin the split is not representable
  CHECK_FALSE(free_space_fields(c, ctx, {0.5, 0.0}).split_valid);
  CHECK_FALSE(principal_fields(c, cyl, {30.0, 40.0}).split_valid);
}
