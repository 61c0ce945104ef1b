// SPDX-License-Identifier: Apache-2.0
//
// Dense two-mode ladder operators on occupations 0..2 per mode (index
// 3 n1 + n2), used as a brute-force reference for the Fock-space engine.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "qcm/quantum.hpp"

namespace quantum_checks {

using qcm::Complex;

struct Dense {
  Eigen::MatrixXcd a1, a2;
  Dense() {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
    a(0, 1) = 1.0;
    a(1, 2) = std::sqrt(2.0);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(3, 3);
    a1 = Eigen::kroneckerProduct(a, id);
    a2 = Eigen::kroneckerProduct(id, a);
  }
  Eigen::MatrixXcd eplus(const qcm::FieldWeights& w) const { return w[0] * a1 + w[1] * a2; }
};

inline Eigen::VectorXcd to_dense(const qcm::FockState& s) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(9);
  for (const auto& t : s.terms()) v(3 * t.n1 + t.n2) = t.amplitude;
  return v;
}

inline Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng)};
}

inline qcm::FockState random_state(std::mt19937_64& rng) {
  qcm::FockState s(2, 2);
  for (int n1 = 0; n1 <= 2; ++n1)
    for (int n2 = 0; n1 + n2 <= 2; ++n2) s.set(n1, n2, random_complex(rng));
  const double n = std::sqrt(s.norm2());
  for (const auto& t : s.terms()) s.set(t.n1, t.n2, t.amplitude / n);
  return s;
}

struct DenseErrors {
  double g1 = 0.0;  // relative to 1 + |G1|
  double g2 = 0.0;  // numerator, relative to 1 + value
};

// Worst disagreement over random states and random field weights.
inline DenseErrors dense_comparison(int trials, std::uint64_t seed) {
  const Dense d;
  std::mt19937_64 rng(seed);
  DenseErrors e;
  for (int t = 0; t < trials; ++t) {
    const qcm::FockState psi = random_state(rng);
    const Eigen::VectorXcd v = to_dense(psi);
    const qcm::FieldWeights w1{random_complex(rng), random_complex(rng)};
    const qcm::FieldWeights w2{random_complex(rng), random_complex(rng)};
    const Eigen::MatrixXcd e1 = d.eplus(w1), e2 = d.eplus(w2);
    const Complex g1_ref = v.dot(e1.adjoint() * e2 * v);
    const double g2_ref = (e2 * e1 * v).squaredNorm();
    e.g1 = std::max(e.g1, std::abs(qcm::g1_from_weights(psi, w1, w2) - g1_ref) / (1.0 + std::abs(g1_ref)));
    e.g2 = std::max(e.g2, std::abs(qcm::g2_numerator(psi, w1, w2) - g2_ref) / (1.0 + g2_ref));
  }
  return e;
}

}  // namespace quantum_checks
