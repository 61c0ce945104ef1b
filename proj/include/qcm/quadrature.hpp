// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

namespace qcm {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int points);

// Shared immutable rule; initialized once per point count.
const GaussRule& gauss_legendre_cached(int points);

// Uniform periodic sample grid phi_j = 2 pi j / count on [0, 2 pi).
std::vector<double> uniform_angles(int count);

}  // namespace qcm
