// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "circle_checks.hpp"
#include "qcm/circle_analytic.hpp"
#include "qcm/quadrature.hpp"

using namespace qcm;

TEST_CASE("order zero at ka = 1") {
  const Complex p = circle_perturbation(0, 1.0);
  CHECK(p.real() == doctest::Approx(-0.98687).epsilon(1e-5));
  CHECK(p.imag() == doctest::Approx(0.11384).epsilon(1e-4));
  CHECK(circle_eigenvalue(0, 1.0) == doctest::Approx(-0.1153388).epsilon(1e-7));
  const CircleModeEntry e = circle_mode(0, 1.0);
  CHECK(e.s.real() == doctest::Approx(-0.97374).epsilon(1e-5));
  CHECK(e.s.imag() == doctest::Approx(0.22768).epsilon(1e-4));
}

TEST_CASE("per-order identities hold for every retained order") {
  for (double ka : {1.0, 3.0, 10.0 * kPi, 0.3}) {
    CAPTURE(ka);
    const auto w = circle_checks::check(ka);
    CHECK(w.orders > 0);
    CHECK(w.boundary <= 1e-12);
    CHECK(w.boundary_field <= 1e-12);
    CHECK(w.unitarity <= 1e-12);
    CHECK(w.s_minus_p <= 1e-12);
    CHECK(w.lambda_p <= 1e-10);
  }
}

TEST_CASE("parity and high-order cut-off") {
  for (int n : {1, 4, 9}) {
    CHECK(circle_eigenvalue(n, 3.7) == circle_eigenvalue(-n, 3.7));
    CHECK(circle_perturbation(n, 3.7) == circle_perturbation(-n, 3.7));
  }
  const CircleModeEntry far = circle_mode(200, 10.0);
  CHECK(far.p == Complex(0.0));
  CHECK(far.s == Complex(1.0));
  CHECK(far.kind == CircleModeKind::unscattered);
  CHECK(std::isinf(far.eigenvalue));
  CHECK_THROWS_AS(circle_mode(0, 0.0), DomainError);
}

TEST_CASE("default order count") {
  for (double ka : {1.0, 10.0, 31.4159}) {
    const int n = default_circle_n_max(ka);
    CHECK(n >= std::ceil(ka) + 12);
    for (int m = n + 1; m < n + 40; ++m) CHECK(std::abs(circle_perturbation(m, ka)) < kRetentionThreshold);
  }
  const CircleScatterer s = make_circle_scatterer(5.0, WaveContext{});
  CHECK(s.n_max == default_circle_n_max(s.ka()));
  CHECK(s.highest_scattered() <= s.n_max);
  CHECK(std::abs(s.perturbation(s.highest_scattered())) >= kRetentionThreshold);
  CHECK(s.entry(s.n_max + 5).kind == CircleModeKind::unscattered);
}

TEST_CASE("resonance sentinel at a zero of J_0") {
  const double j01 = 2.404825557695773;
  const CircleModeEntry e = circle_mode(0, j01);
  CHECK(e.kind == CircleModeKind::resonance);
  CHECK(e.p == Complex(0.0));
  CHECK(e.s == Complex(1.0));
  CHECK(std::isinf(e.eigenvalue));
}

TEST_CASE("basis field splits into incoming and outgoing waves") {
  const CircleScatterer s = make_circle_scatterer(1.0, WaveContext{});
  const CircleScatterer free_space = make_circle_scatterer(1.0, WaveContext{}, -1, true);
  for (int n : {-5, 0, 2, 7}) {
    for (double rho : {1.0, 1.7, 6.0}) {
      const Point2 p = from_polar(rho, 0.9);
      const auto io = circle_incoming_outgoing(n, p, s);
      const Complex f = circle_basis_field(n, p, s);
      CHECK(std::abs(io.incoming + io.outgoing - f) <= 1e-12 * (1.0 + std::abs(f)));
      const auto io0 = circle_incoming_outgoing(n, p, free_space);
      const double jn = std::cyl_bessel_j(std::abs(n), 2.0 * kPi * rho) * (n < 0 && n % 2 ? -1.0 : 1.0);
      const Complex ref = jn * std::polar(1.0 / std::sqrt(2.0 * kPi), -n * 0.9);
      CHECK(std::abs(io0.incoming + io0.outgoing - ref) <= 1e-12);
      CHECK(std::abs(circle_basis_field(n, p, free_space) - ref) <= 1e-12);
    }
    const auto far = circle_incoming_outgoing(n, from_polar(400.0, 2.0), s);
    CHECK(std::abs(far.outgoing) / std::abs(far.incoming) == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(circle_basis_field(0, {0.5, 0.0}, s), DomainError);
}

TEST_CASE("harmonic patterns") {
  const auto phi = uniform_angles(64);
  for (int n = -4; n <= 4; ++n) {
    for (int m = -4; m <= 4; ++m) {
      const Complex g = RadiationPattern::inner(circle_pattern(n, phi), circle_pattern(m, phi));
      CHECK(std::abs(g - (n == m ? 1.0 : 0.0)) < 1e-13);
    }
  }
  for (const Complex v : circle_pattern(0, phi).values) CHECK(v == Complex(1.0));
}

TEST_CASE("composite pattern by two summation orders") {
  const CircleScatterer s = make_circle_scatterer(0.8, WaveContext{});
  std::vector<Complex> v(2 * 30 + 1);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Complex(std::cos(0.37 * i), std::sin(1.1 * i)) / (1.0 + i);
  const auto phi = uniform_angles(97);
  const auto a = composite_pattern_direct(v, s, phi);
  const auto b = composite_pattern_recurrence(v, s, phi);
  for (std::size_t i = 0; i < phi.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
  // linear combination of single-harmonic patterns
  for (std::size_t i = 0; i < phi.size(); i += 10) {
    Complex sum = 0.0;
    for (int n = -30; n <= 30; ++n) sum += s.scattering(n) * v[n + 30] * circle_pattern(n, phi).values[i];
    CHECK(std::abs(sum - a[i]) < 1e-12);
  }
  CHECK_THROWS_AS(composite_pattern_direct(std::vector<Complex>(4), s, phi), DomainError);
}

TEST_CASE("closed form agrees with the moment method at ka = 2") {
  const WaveContext ctx{};
  const double a = 2.0 / ctx.k;
  const CharModeSet m = solve_modes(assemble_impedance(discretize_contour(CircleShape{a}, ctx, 192), ctx), 7);
  std::vector<double> exact;
  for (int n = -3; n <= 3; ++n) exact.push_back(circle_eigenvalue(n, 2.0));
  std::vector<double> numeric = m.eigenvalues;
  std::sort(exact.begin(), exact.end());
  std::sort(numeric.begin(), numeric.end());
  for (std::size_t i = 0; i < exact.size(); ++i) CHECK(std::abs(numeric[i] / exact[i] - 1.0) < 0.01);
}
