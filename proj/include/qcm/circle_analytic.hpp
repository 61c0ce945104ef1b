// SPDX-License-Identifier: Apache-2.0
//
// Closed-form characteristic modes of a conducting circular cylinder of
// radius a. Mode n has the exterior field
//   F_n = (J_n(k rho) + P_n H_n^(1)(k rho)) e^{-i n phi} / sqrt(2 pi)
// with P_n = -J_n(ka) / H_n^(1)(ka) so that F_n vanishes on rho = a.

#pragma once

#include <span>
#include <vector>

#include "qcm/cm_core.hpp"
#include "qcm/types.hpp"

namespace qcm {

enum class CircleModeKind {
  scattered,
  unscattered,  // Y_n(ka) overflowed or J_n/Y_n underflowed: P = 0, S = 1
  resonance,    // J_n(ka) = 0: infinite eigenvalue, P = 0, S = 1
};

struct CircleModeEntry {
  double eigenvalue = 0.0;  // +inf for either sentinel kind
  Complex p;
  Complex s;
  CircleModeKind kind = CircleModeKind::scattered;
};

inline constexpr double kResonanceTolerance = 1e-14;
inline constexpr double kRetentionThreshold = 1e-8;

CircleModeEntry circle_mode(int n, double ka);
Complex circle_perturbation(int n, double ka);
double circle_eigenvalue(int n, double ka);

// Smallest n_max with |P_m| < 1e-8 for every m > n_max, and n_max >= ka + 12.
int default_circle_n_max(double ka);

struct CircleScatterer {
  double radius = 0.0;
  WaveContext context;
  int n_max = 0;
  bool transparent = false;  // S forced to identity (free-space baseline)
  std::vector<CircleModeEntry> modes;  // n = 0..n_max; symmetric in n

  double ka() const { return context.k * radius; }
  const CircleModeEntry& entry(int n) const;
  Complex perturbation(int n) const;
  Complex scattering(int n) const;
  double eigenvalue(int n) const { return entry(n).eigenvalue; }
  // Highest order with P != 0 (-1 if none).
  int highest_scattered() const;
};

// n_max < 0 selects default_circle_n_max.
CircleScatterer make_circle_scatterer(double radius, const WaveContext& ctx, int n_max = -1,
                                      bool transparent = false);

Complex circle_basis_field(int n, Point2 point, const CircleScatterer& scatterer);

struct IncomingOutgoing {
  Complex incoming;
  Complex outgoing;
};

// incoming = H_n^(2)/2, outgoing = S_n H_n^(1)/2 (same angular factor).
IncomingOutgoing circle_incoming_outgoing(int n, Point2 point, const CircleScatterer& scatterer);

// Harmonic pattern i^{-n} e^{-i n phi}: the far-zone form of the outgoing
// part of F_n up to a common constant.
RadiationPattern circle_pattern(int n, std::span<const double> phi,
                                const WaveContext& ctx = WaveContext{});

// Outgoing pattern sum_n S_n V_n i^{-n} e^{-i n phi} for coefficients V_n,
// n in [-n_max, n_max] stored at index n + n_max.
std::vector<Complex> composite_pattern_direct(std::span<const Complex> v, const CircleScatterer& s,
                                              std::span<const double> phi);
// Same sum by phasor recurrence in e^{-i phi}.
std::vector<Complex> composite_pattern_recurrence(std::span<const Complex> v,
                                                  const CircleScatterer& s,
                                                  std::span<const double> phi);

}  // namespace qcm
