// SPDX-License-Identifier: Apache-2.0
//
// Characteristic modes of a perfectly conducting cylinder (E-polarization)
// by the method of moments with pulse basis functions.
//
// Time convention e^{-i omega t}. The impedance matrix z maps a surface
// current to the tangential field it must cancel, z J = E_inc, and is
// written z = r - i x so that r is the (positive semidefinite) radiated power
// form. Characteristic modes solve x J = lambda r J; with J r J = 1 one has
// J_m z J_n = delta_mn (1 - i lambda_n).

#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qcm/contour.hpp"
#include "qcm/types.hpp"

namespace qcm {

struct ImpedanceMatrix {
  Eigen::MatrixXcd z;
  Eigen::MatrixXd r;
  Eigen::MatrixXd x;  // z = r - i x
  WaveContext context;
  Contour contour;
};

// Integral of H_0^(1)(k |t|) over a straight segment of length w centred on
// the observation point, from the termwise-integrated ascending series.
Complex segment_self_integral(double k, double w);

// The two-term closed form w [1 + (2i/pi)(ln(kw/4) + gamma - 1)].
Complex segment_self_integral_leading(double k, double w);

// Observation points closer than this to a source midpoint use Gauss-Legendre
// integration along the true source segment instead of the one-point rule.
double near_zone_radius(const Contour& contour, const WaveContext& ctx);

// x is collocated at the midpoints and symmetrized; r is the Galerkin form
// of the J_0 kernel (3 x 3 Gauss points per segment pair), so it stays
// positive semidefinite. Parallel over rows; threads <= 0 picks the hardware
// concurrency.
ImpedanceMatrix assemble_impedance(const Contour& contour, const WaveContext& ctx,
                                   int threads = 1);

struct CharModeSet {
  std::vector<double> eigenvalues;  // ascending |lambda|
  Eigen::MatrixXd currents;         // column n is J_n, one entry per segment
  int kept_count = 0;
  std::vector<double> normalization;  // factor applied to reach J r J = 1
  int discarded_directions = 0;       // r directions below the rank threshold
  WaveContext context;
  Contour contour;

  Eigen::VectorXd current(int idx) const { return currents.col(idx); }
};

inline constexpr double kRankThreshold = 1e-12;

// The p smallest-|lambda| modes; p <= 0 keeps every mode of the numerical
// rank of r. Throws NumericalError if p exceeds that rank.
CharModeSet solve_modes(const ImpedanceMatrix& z, int keep);

// Field radiated by an arbitrary (complex) current on the contour.
// E(rho) = -(omega mu / 4) sum_j H_0^(1)(k |rho - x_j|) J_j w_j with
// near-segment quadrature. Throws DomainError strictly inside.
Complex current_field(const Contour& contour, const WaveContext& ctx,
                      std::span<const Complex> current, Point2 point);

Complex char_near_field(const CharModeSet& modes, int idx, Point2 point);

// F(phi) = sum_j exp(-i k rhohat(phi) . x_j) J_j w_j; the far field of a
// current is -(omega mu / 4) sqrt(2 / pi) e^{-i pi/4} F e^{i k rho} / sqrt(k rho).
std::vector<Complex> current_far_transform(const Contour& contour, const WaveContext& ctx,
                                           std::span<const Complex> current,
                                           std::span<const double> phi);

struct RadiationPattern {
  std::vector<double> phi_grid;
  std::vector<Complex> values;
  Complex normalization_constant;  // C_k = sqrt(pi omega mu / 2)

  // (1/2 pi) integral of conj(a) b by the trapezoid rule on the shared grid.
  static Complex inner(const RadiationPattern& a, const RadiationPattern& b);
};

// Far pattern with E(rho) ~ C_k Phi(phi) e^{i k rho} / sqrt(k rho). Rescaled
// to unit norm on the sample grid, phase chosen so that Phi(0) is real and
// positive (or the largest sample if Phi(0) is negligible).
RadiationPattern far_pattern(const CharModeSet& modes, int idx, std::span<const double> phi);

struct ModalScattering {
  std::vector<double> eigenvalues;
  std::vector<Complex> p_diag;
  std::vector<Complex> s_diag;
};

// Infinite eigenvalues map to P = 0, S = 1.
ModalScattering perturbation_and_scattering(std::span<const double> eigenvalues);

// Induced-current coefficients alpha_n of each mode for an incident field
// sampled at the segment midpoints: alpha_n = -P_nn <J_n, E_inc>.
std::vector<Complex> classical_scatter(const CharModeSet& modes, const ModalScattering& scattering,
                                       std::span<const Complex> incident);

// Sum_n alpha_n J_n as a per-segment complex current.
std::vector<Complex> combine_currents(const CharModeSet& modes, std::span<const Complex> alpha);

}  // namespace qcm
