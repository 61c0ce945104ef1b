// SPDX-License-Identifier: Apache-2.0
//
// Exact bosonic algebra on at most two modes and four photons. The positive
// frequency field at a point is E+(rho) = sum_j w_j a_j with w_j = v_j(rho)
// (the global field prefactor is set to 1).

#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcm/beams.hpp"
#include "qcm/cm_core.hpp"
#include "qcm/types.hpp"

namespace qcm {

enum class StateKind { single_photon_pair, noon2, single_mode_one_photon, vacuum };

StateKind parse_state_kind(const std::string& name);
std::string state_kind_name(StateKind kind);

using FieldWeights = std::array<Complex, 2>;

class FockState {
 public:
  static constexpr int kMaxModes = 2;
  static constexpr int kMaxPhotons = 4;

  FockState(int mode_count, int max_photons);

  int mode_count() const { return modes_; }
  int max_photons() const { return max_photons_; }
  bool allowed(int n1, int n2) const;
  Complex amplitude(int n1, int n2 = 0) const;
  void set(int n1, int n2, Complex value);
  double norm2() const;
  // <this | other>
  Complex inner(const FockState& other) const;

  struct Term {
    int n1;
    int n2;
    Complex amplitude;
  };
  std::vector<Term> terms() const;  // nonzero amplitudes, lexicographic

 private:
  std::size_t index(int n1, int n2) const;

  int modes_;
  int max_photons_;
  std::vector<Complex> amp_;
};

FockState build_state(StateKind kind);

// Applies sum_j w_j a_j (unnormalized result).
FockState apply_Eplus(const FockState& state, const FieldWeights& w);

// <E-(1) E+(2)> from the mode fields at two points.
Complex g1_from_weights(const FockState& state, const FieldWeights& w1, const FieldWeights& w2);
// ||E+(2) E+(1) psi||^2 (unnormalized second-order correlation).
double g2_numerator(const FockState& state, const FieldWeights& w1, const FieldWeights& w2);
// Masked (nullopt) when either equal-point intensity is below the floor.
std::optional<double> g2_from_weights(const FockState& state, const FieldWeights& w1,
                                      const FieldWeights& w2, double intensity_floor = 0.0);

// Mode fields v_j(rho). Unused modes return 0.
class ModeFieldEvaluator {
 public:
  using Function = std::function<FieldWeights(Point2)>;
  explicit ModeFieldEvaluator(Function f, double prefactor = 1.0)
      : f_(std::move(f)), prefactor_(prefactor) {}

  FieldWeights operator()(Point2 p) const;
  double prefactor() const { return prefactor_; }

 private:
  Function f_;
  double prefactor_;
};

Complex g1(const FockState& state, const ModeFieldEvaluator& ev, Point2 rho1, Point2 rho2);
std::optional<double> g2(const FockState& state, const ModeFieldEvaluator& ev, Point2 rho1,
                         Point2 rho2, double intensity_floor = 0.0);

struct TransformMatrix {
  Eigen::MatrixXcd v;           // rows: target modes, columns: source modes
  double row_orthonormality = 0.0;  // max |V V^H - I|
  bool rows_orthonormal = false;
};

inline constexpr double kPatternNormTolerance = 1e-6;
inline constexpr double kOrthonormalTolerance = 1e-8;

// V_mn = (1/2 pi) integral Phi_n conj(Y_m). Throws if a pattern is not
// unit-normalized on its grid.
TransformMatrix mode_transform(std::span<const RadiationPattern> target,
                               std::span<const RadiationPattern> source);

// C_ij = sum_n V_in conj(V_jn) for rows V_i = modal expansions of the modes.
Eigen::MatrixXcd commutator_matrix(const Eigen::MatrixXcd& rows);
Eigen::MatrixXcd commutator_matrix(std::span<const ModalCoefficients> modes);

}  // namespace qcm
