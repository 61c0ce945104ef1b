// SPDX-License-Identifier: Apache-2.0
//
// Gaussian beams e_inc(-x0, y) = E0 exp(-beta^2 y^2) expanded over the
// circular harmonics F_n. A beam travelling along +x with its waist at
// x = -x0 has the modal expansion
//   e(rho) = A sum_n i^n Delta_n exp(-kappa n^2) J_n(k rho) e^{-i n phi}
// with kappa = (beta/k)^2 / (1 + i xi), xi = 2 beta^2 x0 / k and
// A = E0 e^{i k x0} / sqrt(1 + i xi). Delta_n = 1 for the leading order and
// 1 - 2 kappa^2 n^2 + (4/3) kappa^3 n^4 for the cubic correction.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "qcm/circle_analytic.hpp"
#include "qcm/types.hpp"

namespace qcm {

enum class ExpansionOrder { leading, cubic };

struct GaussianBeamSpec {
  double amplitude = 1.0;
  double beta = 0.04;
  double x0 = 0.0;
  double theta = 0.0;  // counterclockwise rotation of the propagation axis

  double xi(const WaveContext& ctx) const { return 2.0 * beta * beta * x0 / ctx.k; }
  Complex kappa(const WaveContext& ctx) const;
  // Informational 1/e^2 intensity half-width.
  double width() const { return 1.0 / beta; }
};

inline constexpr double kWideBeamLimit = 0.2;
inline constexpr double kWideBeamWarn = 0.05;

// Throws DomainError if beta * wavelength > 0.2; returns true above 0.05.
bool check_wide_beam(const GaussianBeamSpec& beam, const WaveContext& ctx);

struct ModalCoefficients {
  int n_max = 0;
  std::vector<Complex> values;  // index n + n_max
  // Physical field = field_scale * sum_n V_n F_n (1 for derived modes).
  Complex field_scale = 1.0;
  double tail_estimate = 0.0;  // relative power dropped beyond n_max
  std::vector<std::string> warnings;

  static ModalCoefficients zeros(int n_max);
  Complex at(int n) const;
  Complex& at(int n);
  double norm2() const;
  ModalCoefficients padded(int new_n_max) const;
};

inline constexpr double kBeamTruncation = 1e-8;

// Smallest n with |exp(-kappa n^2)|^2 below the truncation level.
int beam_n_max(const GaussianBeamSpec& beam, const WaveContext& ctx);

// Normalized so sum |V_n|^2 = 1; n_max = max(beam_n_max, n_max_floor).
ModalCoefficients excitation_coeffs(const GaussianBeamSpec& beam, const WaveContext& ctx,
                                    ExpansionOrder order, int n_max_floor = 0);

// Angular-spectrum integral of the beam by adaptive composite
// Gauss-Legendre quadrature over the propagating band.
Complex beam_field_direct(const GaussianBeamSpec& beam, const WaveContext& ctx, Point2 point);

ModalCoefficients rotate_coeffs(const ModalCoefficients& c, double theta);

// mu12 = sum_n c2_n conj(c1_n).
Complex overlap(const ModalCoefficients& c1, const ModalCoefficients& c2);

struct PrincipalModePair {
  ModalCoefficients v1;
  ModalCoefficients v2_orth;
  Complex mu12;
  double gram_norm = 1.0;
};

inline constexpr double kDegenerateOverlap = 1.0 - 1e-8;

PrincipalModePair orthogonalize(const ModalCoefficients& c1, const ModalCoefficients& c2);

struct PrincipalField {
  Complex incoming;
  Complex outgoing;
  Complex total;
  bool split_valid = true;  // false inside k rho < ~n_max, where H_n is huge and the halves cancel
};

// Evaluates several coefficient sets at one point from a single Bessel
// sweep. A null scatterer means free space (P = 0, S = 1, no interior).
class CircleFieldEvaluator {
 public:
  CircleFieldEvaluator(const WaveContext& ctx, const CircleScatterer* scatterer,
                       std::vector<ModalCoefficients> modes);

  int mode_count() const { return static_cast<int>(modes_.size()); }
  int n_max() const { return n_max_; }
  bool inside(Point2 point) const;

  // Totals sum_n V_n F_n only; cheaper than fields().
  void totals(Point2 point, std::span<Complex> out) const;
  std::vector<PrincipalField> fields(Point2 point) const;

 private:
  WaveContext ctx_;
  const CircleScatterer* scatterer_;
  std::vector<ModalCoefficients> modes_;
  int n_max_ = 0;
};

PrincipalField principal_fields(const ModalCoefficients& c, const CircleScatterer& scatterer,
                                Point2 point);
PrincipalField free_space_fields(const ModalCoefficients& c, const WaveContext& ctx, Point2 point);

}  // namespace qcm
