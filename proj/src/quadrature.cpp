// SPDX-License-Identifier: Apache-2.0

#include "qcm/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "qcm/types.hpp"

namespace qcm {

GaussRule gauss_legendre(int points) {
  if (points < 1) throw DomainError("Gauss-Legendre rule needs at least one point");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(points));
  rule.weights.resize(static_cast<std::size_t>(points));
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int j = 2; j <= points; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = points * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = z;
    for (int j = 2; j <= points; ++j) {
      const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = points * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    rule.nodes[static_cast<std::size_t>(points - 1 - i)] = z;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(points - 1 - i)] = w;
  }
  if (points % 2 == 1) rule.nodes[static_cast<std::size_t>(points / 2)] = 0.0;
  return rule;
}

const GaussRule& gauss_legendre_cached(int points) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(points);
  if (it == cache.end()) it = cache.emplace(points, gauss_legendre(points)).first;
  return it->second;
}

std::vector<double> uniform_angles(int count) {
  if (count < 1) throw DomainError("angle grid needs at least one sample");
  std::vector<double> phi(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) phi[static_cast<std::size_t>(j)] = 2.0 * kPi * j / count;
  return phi;
}

}  // namespace qcm
