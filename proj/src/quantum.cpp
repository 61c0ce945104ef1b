// SPDX-License-Identifier: Apache-2.0

#include "qcm/quantum.hpp"

#include <algorithm>
#include <cmath>

namespace qcm {

StateKind parse_state_kind(const std::string& name) {
  if (name == "single_photon_pair" || name == "pair") return StateKind::single_photon_pair;
  if (name == "noon2") return StateKind::noon2;
  if (name == "single_mode_one_photon" || name == "single") return StateKind::single_mode_one_photon;
  if (name == "vacuum") return StateKind::vacuum;
  throw DomainError("unknown state kind '" + name + "'");
}

std::string state_kind_name(StateKind kind) {
  switch (kind) {
    case StateKind::single_photon_pair: return "single_photon_pair";
    case StateKind::noon2: return "noon2";
    case StateKind::single_mode_one_photon: return "single_mode_one_photon";
    case StateKind::vacuum: return "vacuum";
  }
  return "unknown";
}

FockState::FockState(int mode_count, int max_photons) : modes_(mode_count), max_photons_(max_photons) {
  if (mode_count < 1 || mode_count > kMaxModes) throw DomainError("Fock space supports 1 or 2 modes");
  if (max_photons < 0 || max_photons > kMaxPhotons) throw DomainError("at most 4 photons supported");
  const auto side = static_cast<std::size_t>(max_photons) + 1;
  amp_.assign(side * side, 0.0);
}

bool FockState::allowed(int n1, int n2) const {
  if (n1 < 0 || n2 < 0 || n1 + n2 > max_photons_) return false;
  return modes_ == 2 || n2 == 0;
}

std::size_t FockState::index(int n1, int n2) const {
  return static_cast<std::size_t>(n1) * (static_cast<std::size_t>(max_photons_) + 1) +
         static_cast<std::size_t>(n2);
}

Complex FockState::amplitude(int n1, int n2) const {
  return allowed(n1, n2) ? amp_[index(n1, n2)] : Complex(0.0, 0.0);
}

void FockState::set(int n1, int n2, Complex value) {
  if (!allowed(n1, n2)) throw DomainError("occupation tuple outside the Fock space");
  amp_[index(n1, n2)] = value;
}

double FockState::norm2() const {
  double s = 0.0;
  for (const Complex& a : amp_) s += std::norm(a);
  return s;
}

Complex FockState::inner(const FockState& other) const {
  Complex s = 0.0;
  for (int n1 = 0; n1 <= max_photons_; ++n1) {
    for (int n2 = 0; n1 + n2 <= max_photons_; ++n2) {
      if (!allowed(n1, n2)) continue;
      s += std::conj(amplitude(n1, n2)) * other.amplitude(n1, n2);
    }
  }
  return s;
}

std::vector<FockState::Term> FockState::terms() const {
  std::vector<Term> out;
  for (int n1 = 0; n1 <= max_photons_; ++n1) {
    for (int n2 = 0; n1 + n2 <= max_photons_; ++n2) {
      const Complex a = amplitude(n1, n2);
      if (a != 0.0) out.push_back({n1, n2, a});
    }
  }
  return out;
}

FockState build_state(StateKind kind) {
  switch (kind) {
    case StateKind::single_photon_pair: {
      FockState s(2, 2);
      s.set(1, 1, 1.0);
      return s;
    }
    case StateKind::noon2: {
      FockState s(2, 2);
      s.set(2, 0, 1.0 / std::sqrt(2.0));
      s.set(0, 2, 1.0 / std::sqrt(2.0));
      return s;
    }
    case StateKind::single_mode_one_photon: {
      FockState s(1, 1);
      s.set(1, 0, 1.0);
      return s;
    }
    case StateKind::vacuum: {
      FockState s(2, 0);
      s.set(0, 0, 1.0);
      return s;
    }
  }
  throw DomainError("unknown state kind");
}

FockState apply_Eplus(const FockState& state, const FieldWeights& w) {
  FockState out(state.mode_count(), state.max_photons());
  for (const auto& t : state.terms()) {
    if (t.n1 > 0) {
      out.set(t.n1 - 1, t.n2,
              out.amplitude(t.n1 - 1, t.n2) + w[0] * std::sqrt(static_cast<double>(t.n1)) * t.amplitude);
    }
    if (state.mode_count() == 2 && t.n2 > 0) {
      out.set(t.n1, t.n2 - 1,
              out.amplitude(t.n1, t.n2 - 1) + w[1] * std::sqrt(static_cast<double>(t.n2)) * t.amplitude);
    }
  }
  return out;
}

Complex g1_from_weights(const FockState& state, const FieldWeights& w1, const FieldWeights& w2) {
  return apply_Eplus(state, w1).inner(apply_Eplus(state, w2));
}

double g2_numerator(const FockState& state, const FieldWeights& w1, const FieldWeights& w2) {
  return apply_Eplus(apply_Eplus(state, w1), w2).norm2();
}

std::optional<double> g2_from_weights(const FockState& state, const FieldWeights& w1,
                                      const FieldWeights& w2, double intensity_floor) {
  const double i1 = apply_Eplus(state, w1).norm2();
  const double i2 = apply_Eplus(state, w2).norm2();
  if (!(i1 > intensity_floor) || !(i2 > intensity_floor)) return std::nullopt;
  return g2_numerator(state, w1, w2) / (i1 * i2);
}

FieldWeights ModeFieldEvaluator::operator()(Point2 p) const {
  FieldWeights w = f_(p);
  w[0] *= prefactor_;
  w[1] *= prefactor_;
  return w;
}

Complex g1(const FockState& state, const ModeFieldEvaluator& ev, Point2 rho1, Point2 rho2) {
  return g1_from_weights(state, ev(rho1), ev(rho2));
}

std::optional<double> g2(const FockState& state, const ModeFieldEvaluator& ev, Point2 rho1,
                         Point2 rho2, double intensity_floor) {
  return g2_from_weights(state, ev(rho1), ev(rho2), intensity_floor);
}

TransformMatrix mode_transform(std::span<const RadiationPattern> target,
                               std::span<const RadiationPattern> source) {
  if (target.empty() || source.empty()) throw DomainError("empty pattern basis");
  auto check = [](const RadiationPattern& p) {
    const double n = RadiationPattern::inner(p, p).real();
    if (std::abs(n - 1.0) > kPatternNormTolerance) {
      throw DomainError("pattern is not normalized on its sample grid");
    }
  };
  for (const auto& p : target) check(p);
  for (const auto& p : source) check(p);

  TransformMatrix out;
  const auto rows = static_cast<Eigen::Index>(target.size());
  const auto cols = static_cast<Eigen::Index>(source.size());
  out.v.resize(rows, cols);
  for (Eigen::Index m = 0; m < rows; ++m) {
    for (Eigen::Index n = 0; n < cols; ++n) {
      out.v(m, n) = RadiationPattern::inner(target[static_cast<std::size_t>(m)],
                                            source[static_cast<std::size_t>(n)]);
    }
  }
  const Eigen::MatrixXcd gram = out.v * out.v.adjoint();
  out.row_orthonormality = (gram - Eigen::MatrixXcd::Identity(rows, rows)).cwiseAbs().maxCoeff();
  out.rows_orthonormal = out.row_orthonormality <= kOrthonormalTolerance;
  return out;
}

Eigen::MatrixXcd commutator_matrix(const Eigen::MatrixXcd& rows) { return rows * rows.adjoint(); }

Eigen::MatrixXcd commutator_matrix(std::span<const ModalCoefficients> modes) {
  int n_max = 0;
  for (const auto& m : modes) n_max = std::max(n_max, m.n_max);
  Eigen::MatrixXcd rows(static_cast<Eigen::Index>(modes.size()), 2 * n_max + 1);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    for (int n = -n_max; n <= n_max; ++n) {
      rows(static_cast<Eigen::Index>(i), n + n_max) = modes[i].at(n);
    }
  }
  return commutator_matrix(rows);
}

}  // namespace qcm
