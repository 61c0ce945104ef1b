// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcm {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;
inline constexpr Complex kI{0.0, 1.0};

// Invalid argument to a mathematical operation (outside its domain).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A computation that cannot produce a trustworthy result (rank failure,
// non-convergence, degenerate beams).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  double norm() const { return std::hypot(x, y); }
  double angle() const { return std::atan2(y, x); }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline Point2 from_polar(double rho, double phi) {
  return {rho * std::cos(phi), rho * std::sin(phi)};
}

// Natural units c = mu = eps = hbar = 1; the wavelength is the length unit
// of every geometric input, so omega == k.
struct WaveContext {
  double wavelength = 1.0;
  double k = 2.0 * kPi;
  double omega = 2.0 * kPi;
  double mu = 1.0;

  static WaveContext from_wavelength(double wavelength) {
    if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
      throw DomainError("wavelength must be positive and finite");
    }
    const double k = 2.0 * kPi / wavelength;
    return {wavelength, k, k, 1.0};
  }
};

}  // namespace qcm
