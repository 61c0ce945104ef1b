// SPDX-License-Identifier: Apache-2.0

#include "qcm/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace qcm::specfun {
namespace {

// Below this argument the ascending series is used for J_n.
constexpr double kSeriesLimit = 0.05;
// Rescaling step of the downward recurrence; a power of two keeps it exact.
constexpr int kRescaleExponent = 600;
const double kRescaleThreshold = std::ldexp(1.0, kRescaleExponent);

double clamp_underflow(double v) {
  return (std::abs(v) < kUnderflowFloor) ? std::copysign(0.0, v) : v;
}

void check_argument(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError("cylinder function argument must be finite and non-negative");
  }
}

std::vector<double> j_series(int order_max, double x) {
  std::vector<double> out(static_cast<std::size_t>(order_max) + 1, 0.0);
  const double half = 0.5 * x;
  const double q = -half * half;
  double prefactor = 1.0;  // (x/2)^n / n!
  for (int n = 0; n <= order_max; ++n) {
    if (n > 0) prefactor *= half / n;
    if (prefactor < kUnderflowFloor) break;  // monotone in n for x < 2
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < 40; ++m) {
      term *= q / (static_cast<double>(m) * (n + m));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    out[static_cast<std::size_t>(n)] = clamp_underflow(prefactor * sum);
  }
  return out;
}

std::vector<double> j_miller(int order_max, double x) {
  const double top = std::max(static_cast<double>(order_max), x);
  int start = static_cast<int>(top + std::sqrt(160.0 * std::max(top, 1.0))) + 20;
  start += start % 2;

  std::vector<double> out(static_cast<std::size_t>(order_max) + 1, 0.0);
  double above = 0.0;    // s_{n+1}
  double current = 1.0;  // s_n, arbitrary seed at n = start
  double norm = 0.0;     // s_0 + 2 * sum of even s_{2m}
  if (start <= order_max) out[static_cast<std::size_t>(start)] = current;
  norm += 2.0 * current;  // start is even

  const double two_over_x = 2.0 / x;
  for (int n = start; n >= 1; --n) {
    const double below = n * two_over_x * current - above;
    above = current;
    current = below;
    const int idx = n - 1;
    if (idx <= order_max) out[static_cast<std::size_t>(idx)] = current;
    if (idx % 2 == 0) norm += (idx == 0 ? 1.0 : 2.0) * current;

    if (std::abs(current) > kRescaleThreshold) {
      above = std::ldexp(above, -kRescaleExponent);
      current = std::ldexp(current, -kRescaleExponent);
      norm = std::ldexp(norm, -kRescaleExponent);
      const int first = std::max(idx, 0);
      for (int i = first; i <= order_max; ++i) {
        auto& v = out[static_cast<std::size_t>(i)];
        v = std::ldexp(v, -kRescaleExponent);
      }
    }
  }

  for (auto& v : out) v = clamp_underflow(v / norm);
  return out;
}

// Hankel's large-argument expansion for order zero.
Complex hankel1_0_asymptotic(double x) {
  Complex sum = 1.0;
  Complex term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    // a_k(0) / a_{k-1}(0) = -(2k-1)^2 / (8k); each term carries i / x
    term *= Complex(0.0, -odd * odd / (8.0 * k * x));
    const double mag = std::abs(term);
    if (mag > last) break;
    sum += term;
    last = mag;
    if (mag < 1e-17) break;
  }
  const double phase = x - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * Complex(std::cos(phase), std::sin(phase)) * sum;
}

}  // namespace

std::vector<double> bessel_j_sweep(int order_max, double x) {
  if (order_max < 0) throw DomainError("order_max must be non-negative");
  check_argument(x);
  if (x == 0.0) {
    std::vector<double> out(static_cast<std::size_t>(order_max) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  if (x < kSeriesLimit) return j_series(order_max, x);
  return j_miller(order_max, x);
}

NeumannSweep bessel_y_sweep(int order_max, double x) {
  if (order_max < 0) throw DomainError("order_max must be non-negative");
  check_argument(x);
  if (x == 0.0) throw DomainError("Y_n is singular at x = 0");

  NeumannSweep sweep;
  sweep.values.assign(static_cast<std::size_t>(order_max) + 1,
                      -std::numeric_limits<double>::infinity());
  double prev = std::cyl_neumann(0.0, x);
  sweep.values[0] = prev;
  if (order_max == 0) return sweep;

  double cur = std::cyl_neumann(1.0, x);
  if (!(std::abs(cur) <= kOverflowCeiling)) {
    sweep.overflow_from = 1;
    return sweep;
  }
  sweep.values[1] = cur;
  const double two_over_x = 2.0 / x;
  for (int n = 1; n < order_max; ++n) {
    const double next = n * two_over_x * cur - prev;
    if (!(std::abs(next) <= kOverflowCeiling)) {
      sweep.overflow_from = n + 1;
      break;
    }
    prev = cur;
    cur = next;
    sweep.values[static_cast<std::size_t>(n) + 1] = cur;
  }
  return sweep;
}

CylFunSweep cylinder_sweep(int order_max, double x, int y_order_max) {
  CylFunSweep out;
  out.argument = x;
  out.j = bessel_j_sweep(order_max, x);
  if (y_order_max < 0) y_order_max = order_max;
  out.y = bessel_y_sweep(std::min(y_order_max, order_max), x);
  return out;
}

double CylFunSweep::bessel_j(int n) const {
  const int m = std::abs(n);
  if (m > order_max()) throw DomainError("order outside the sweep");
  const double v = j[static_cast<std::size_t>(m)];
  return n < 0 ? reflect_order(m, v) : v;
}

double CylFunSweep::bessel_y(int n) const {
  const int m = std::abs(n);
  if (m >= static_cast<int>(y.values.size())) throw DomainError("order outside the sweep");
  const double v = y.values[static_cast<std::size_t>(m)];
  return n < 0 ? reflect_order(m, v) : v;
}

bool CylFunSweep::y_overflowed(int n) const { return y.overflowed(std::abs(n)); }

Complex CylFunSweep::hankel1(int n) const { return {bessel_j(n), bessel_y(n)}; }

Complex hankel(int kind, int n, double x) {
  if (kind != 1 && kind != 2) throw DomainError("Hankel kind must be 1 or 2");
  if (!(x > 0.0)) throw DomainError("Hankel functions need x > 0");
  const int m = std::abs(n);
  const CylFunSweep sweep = cylinder_sweep(m, x);
  if (sweep.y_overflowed(m)) throw NumericalError("Y_n overflow in hankel()");
  const Complex h1 = sweep.hankel1(n);
  return kind == 1 ? h1 : std::conj(h1);
}

Complex hankel1_0(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("hankel1_0 needs finite x > 0");
  if (x >= 25.0) return hankel1_0_asymptotic(x);
  return {std::cyl_bessel_j(0.0, x), std::cyl_neumann(0.0, x)};
}

}  // namespace qcm::specfun
