// SPDX-License-Identifier: Apache-2.0
//
// Integer-order cylinder functions J_n, Y_n, H_n^(1,2) on real arguments.
//
// J_n comes from a normalized downward (Miller) recurrence, which stays
// stable far beyond the turning point n ~ x where field sums over large
// harmonic orders need it. Y_n is produced by upward recurrence from Y_0 and
// Y_1; it grows without bound for n > x, and orders that leave the double
// range are flagged instead of silently turning into garbage.

#pragma once

#include <limits>
#include <span>
#include <vector>

#include "qcm/types.hpp"

namespace qcm::specfun {

// Magnitudes below this are reported as a signed zero.
inline constexpr double kUnderflowFloor = 1e-280;
// |Y_n| above this marks the order (and every higher one) as overflowed.
inline constexpr double kOverflowCeiling = 1e300;

// J_0(x)..J_{order_max}(x). x == 0 yields [1, 0, 0, ...].
std::vector<double> bessel_j_sweep(int order_max, double x);

struct NeumannSweep {
  std::vector<double> values;  // Y_0..Y_{order_max}; -inf past overflow
  int overflow_from = std::numeric_limits<int>::max();

  bool overflowed(int n) const { return n >= overflow_from; }
};

// Y_0(x)..Y_{order_max}(x) for x > 0.
NeumannSweep bessel_y_sweep(int order_max, double x);

// Both kinds on one argument. Y may cover fewer orders than J (it is only
// needed where a scatterer perturbs the field).
struct CylFunSweep {
  double argument = 0.0;
  std::vector<double> j;
  NeumannSweep y;

  int order_max() const { return static_cast<int>(j.size()) - 1; }
  // Signed-order access using J_{-n} = (-1)^n J_n.
  double bessel_j(int n) const;
  double bessel_y(int n) const;
  bool y_overflowed(int n) const;
  Complex hankel1(int n) const;
};

CylFunSweep cylinder_sweep(int order_max, double x, int y_order_max = -1);

// J_n(x) + iY_n(x) for kind 1, J_n(x) - iY_n(x) for kind 2. Throws
// NumericalError if Y_n(x) overflows.
Complex hankel(int kind, int n, double x);

// H_0^(1)(x) for a single argument; asymptotic expansion for large x.
Complex hankel1_0(double x);

// (-1)^n * value, the negative-order reflection shared by J_n and Y_n.
constexpr double reflect_order(int n, double value) {
  return (n % 2 == 0) ? value : -value;
}

}  // namespace qcm::specfun
