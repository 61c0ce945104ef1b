// SPDX-License-Identifier: Apache-2.0
//
// Identity sweeps over (n, x) for the cylinder functions. Entries that were
// clamped to zero or flagged as Y overflow are skipped, not counted.

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qcm/specfun.hpp"

namespace suites {

struct Stats {
  double worst = 0.0;
  long checked = 0;
  long skipped = 0;
};

inline std::vector<double> argument_grid() {
  std::vector<double> xs;
  // log-spaced 0.1 .. 400 plus a few integer and turning-point values
  for (int i = 0; i <= 120; ++i) xs.push_back(0.1 * std::pow(4000.0, i / 120.0));
  for (double x : {1.0, 2.0, 5.0, 10.0, 31.41592653589793, 100.0, 200.0, 399.5, 400.0}) xs.push_back(x);
  return xs;
}

// J_n Y_n' - J_n' Y_n against 2 / (pi x), derivatives by f'_n = f_{n-1} - (n/x) f_n.
inline Stats wronskian(int order_max, const std::vector<double>& xs) {
  Stats s;
  for (double x : xs) {
    const auto sw = qcm::specfun::cylinder_sweep(order_max, x);
    const double target = 2.0 / (qcm::kPi * x);
    for (int n = 0; n <= order_max; ++n) {
      const int lo = n == 0 ? 1 : n - 1;
      if (sw.y_overflowed(n) || sw.y_overflowed(lo) || sw.j[n] == 0.0 || sw.j[lo] == 0.0) {
        ++s.skipped;
        continue;
      }
      double jd, yd;
      if (n == 0) {
        jd = -sw.j[1];
        yd = -sw.y.values[1];
      } else {
        jd = sw.j[n - 1] - n / x * sw.j[n];
        yd = sw.y.values[n - 1] - n / x * sw.y.values[n];
      }
      const double w = sw.j[n] * yd - jd * sw.y.values[n];
      s.worst = std::max(s.worst, std::abs(w - target) / target);
      ++s.checked;
    }
  }
  return s;
}

// Three-term recurrence residual of both kinds, scaled by the largest term.
inline Stats recurrence(int order_max, const std::vector<double>& xs) {
  Stats s;
  auto residual = [](double up, double mid, double down, double x, int n) {
    const double a = 2.0 * n / x * mid;
    const double scale = std::max({std::abs(up), std::abs(a), std::abs(down)});
    return std::abs(up - a + down) / scale;
  };
  for (double x : xs) {
    const auto sw = qcm::specfun::cylinder_sweep(order_max, x);
    for (int n = 1; n < order_max; ++n) {
      const double floor = qcm::specfun::kUnderflowFloor;
      if (std::abs(sw.j[n - 1]) > floor && std::abs(sw.j[n]) > floor && std::abs(sw.j[n + 1]) > floor) {
        s.worst = std::max(s.worst, residual(sw.j[n + 1], sw.j[n], sw.j[n - 1], x, n));
        ++s.checked;
      } else {
        ++s.skipped;
      }
      if (!sw.y_overflowed(n + 1)) {
        s.worst = std::max(s.worst, residual(sw.y.values[n + 1], sw.y.values[n], sw.y.values[n - 1], x, n));
        ++s.checked;
      } else {
        ++s.skipped;
      }
    }
  }
  return s;
}

// Sweep values against the 50-digit series; worst is the relative error
// over entries that fail the absolute 1e-12 escape.
inline Stats series(int order_max, const std::vector<double>& xs, double rel, long* failures) {
  Stats s;
  *failures = 0;
  for (double x : xs) {
    const auto sw = qcm::specfun::cylinder_sweep(order_max, x);
    for (int n = 0; n <= order_max; ++n) {
      const double j = oracle::bessel_j(n, x);
      const double y = oracle::bessel_y(n, x);
      if (!oracle::close(sw.j[n], j, rel)) ++*failures;
      if (!oracle::close(sw.y.values[n], y, rel)) ++*failures;
      if (std::abs(j) > 1e-12) s.worst = std::max(s.worst, std::abs(sw.j[n] - j) / std::abs(j));
      if (std::abs(y) > 1e-12) s.worst = std::max(s.worst, std::abs(sw.y.values[n] - y) / std::abs(y));
      s.checked += 2;
    }
  }
  return s;
}

inline std::vector<double> series_grid() {
  std::vector<double> xs;
  for (int i = 0; i <= 40; ++i) xs.push_back(0.1 + (20.0 - 0.1) * i / 40.0);
  for (double x : {0.01, 0.05, 0.07, 1.0, 2.0, 2.404825557695773, 5.0}) xs.push_back(x);
  return xs;
}

}  // namespace suites
