// SPDX-License-Identifier: Apache-2.0

#include "qcm/cm_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcm/parallel.hpp"
#include "qcm/quadrature.hpp"
#include "qcm/specfun.hpp"

namespace qcm {
namespace {

constexpr int kNearPoints = 16;
constexpr int kGramPoints = 3;

// Integral of H_0^(1)(k |y - obs|) over one source segment, including the
// singular case where obs is the segment midpoint.
Complex segment_integral(const Contour& contour, const WaveContext& ctx, int seg, Point2 obs,
                         double near_radius) {
  const auto j = static_cast<std::size_t>(seg);
  const double w = contour.lengths()[j];
  const double d = distance(obs, contour.midpoints()[j]);
  if (d < 1e-9 * w) return segment_self_integral(ctx.k, w);
  if (d >= near_radius) return specfun::hankel1_0(ctx.k * d) * w;
  Complex sum = 0.0;
  for (const auto& q : contour.segment_quadrature(seg, gauss_legendre_cached(kNearPoints))) {
    const double dq = distance(obs, q.point);
    if (dq == 0.0) throw DomainError("observation point coincides with a quadrature node");
    sum += specfun::hankel1_0(ctx.k * dq) * q.weight;
  }
  return sum;
}

}  // namespace

Complex segment_self_integral(double k, double w) {
  if (!(k > 0.0) || !(w > 0.0)) throw DomainError("self-term needs k > 0 and w > 0");
  const double u = 0.25 * k * w;
  if (u > 2.0) throw DomainError("segment too long for the self-term series");
  const double log_u = std::log(u);
  double sum_j = 0.0;
  double sum_y = 0.0;
  double power = 1.0;  // (-1)^m u^{2m} / (m!)^2
  double harmonic = 0.0;
  for (int m = 0; m < 60; ++m) {
    if (m > 0) {
      power *= -u * u / (static_cast<double>(m) * m);
      harmonic += 1.0 / m;
    }
    const double odd = 2.0 * m + 1.0;
    const double base = power / odd;
    sum_j += base;
    // -H_m carries the (-1)^{m+1} sign of the Y_0 correction series
    sum_y += base * (log_u + kEulerGamma - 1.0 / odd - harmonic);
    if (m > 2 && std::abs(base) * (std::abs(log_u) + harmonic + 2.0) < 1e-18) break;
  }
  return w * Complex(sum_j, (2.0 / kPi) * sum_y);
}

Complex segment_self_integral_leading(double k, double w) {
  return w * Complex(1.0, (2.0 / kPi) * (std::log(0.25 * k * w) + kEulerGamma - 1.0));
}

double near_zone_radius(const Contour& contour, const WaveContext& ctx) {
  return std::max(0.1 * ctx.wavelength, 2.01 * contour.max_segment_length());
}

ImpedanceMatrix assemble_impedance(const Contour& contour, const WaveContext& ctx, int threads) {
  const int n = contour.size();
  if (n < Contour::kMinSegments) throw DomainError("contour is not discretized");
  const auto mid = contour.midpoints();
  const auto len = contour.lengths();
  const double near = near_zone_radius(contour, ctx);
  const double scale = 0.25 * ctx.omega * ctx.mu;

  Eigen::MatrixXcd raw(n, n);
  parallel_for(n, threads, [&](int m) {
    const auto im = static_cast<std::size_t>(m);
    for (int c = 0; c < n; ++c) {
      if (c != m && distance(mid[im], mid[static_cast<std::size_t>(c)]) < 1e-12 * len[im]) {
        throw NumericalError("coincident segment midpoints");
      }
      raw(m, c) = scale * len[im] * segment_integral(contour, ctx, c, mid[im], near);
    }
  });

  // The real part is rebuilt as a Galerkin Gram matrix of the smooth J_0
  // kernel, positive semidefinite to rounding; the collocated real part is
  // indefinite at the discretization-error level, which pollutes the pencil.
  std::vector<std::vector<QuadraturePoint>> nodes(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    nodes[static_cast<std::size_t>(s)] = contour.segment_quadrature(s, gauss_legendre_cached(kGramPoints));
  }
  ImpedanceMatrix out{Eigen::MatrixXcd(n, n), Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n), ctx,
                      contour};
  parallel_for(n, threads, [&](int i) {
    const auto& a = nodes[static_cast<std::size_t>(i)];
    for (int j = i; j < n; ++j) {
      const auto& b = nodes[static_cast<std::size_t>(j)];
      double gram = 0.0;
      for (const auto& qa : a) {
        for (const auto& qb : b) {
          const double d = distance(qa.point, qb.point);
          gram += qa.weight * qb.weight * (d == 0.0 ? 1.0 : std::cyl_bessel_j(0.0, ctx.k * d));
        }
      }
      out.r(i, j) = scale * gram;
      out.x(i, j) = (i == j) ? -raw(i, i).imag() : -0.5 * (raw(i, j) + raw(j, i)).imag();
    }
  });
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      out.r(j, i) = out.r(i, j);
      out.x(j, i) = out.x(i, j);
      out.z(i, j) = out.z(j, i) = Complex(out.r(i, j), -out.x(i, j));
    }
  }
  return out;
}

CharModeSet solve_modes(const ImpedanceMatrix& z, int keep) {
  const int n = static_cast<int>(z.r.rows());
  if (keep > n) throw DomainError("requested mode count out of range");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> radiation(z.r);
  if (radiation.info() != Eigen::Success) throw NumericalError("eigen-decomposition of r failed");
  const Eigen::VectorXd& rho = radiation.eigenvalues();  // ascending
  const double top = rho(n - 1);
  if (!(top > 0.0)) throw NumericalError("radiation matrix has no positive spectrum");
  int discarded = 0;
  while (discarded < n && !(rho(discarded) > kRankThreshold * top)) ++discarded;
  const int rank = n - discarded;
  if (keep <= 0) keep = rank;
  if (keep > rank) throw NumericalError("requested more modes than the numerical rank of r");

  const Eigen::MatrixXd& u = radiation.eigenvectors();
  const Eigen::MatrixXd uk = u.rightCols(rank);
  const Eigen::VectorXd dk = rho.tail(rank);
  const Eigen::MatrixXd xk = uk.transpose() * z.x * uk;

  // Directions where r vanishes carry no eigen-weight; eliminate them via the
  // Schur complement of x instead of truncating.
  Eigen::MatrixXd schur = xk;
  Eigen::MatrixXd back;  // b = back * a
  Eigen::MatrixXd ud;
  if (discarded > 0) {
    ud = u.leftCols(discarded);
    const Eigen::MatrixXd xd = ud.transpose() * z.x * ud;
    const Eigen::MatrixXd xdk = ud.transpose() * z.x * uk;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(xd);
    if (!lu.isInvertible()) throw NumericalError("reactance block on the null space of r is singular");
    back = -lu.solve(xdk);
    schur += xdk.transpose() * back;
  }

  const Eigen::VectorXd inv_sqrt = dk.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd reduced = inv_sqrt.asDiagonal() * schur * inv_sqrt.asDiagonal();
  reduced = 0.5 * (reduced + reduced.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> reactive(reduced);
  if (reactive.info() != Eigen::Success) throw NumericalError("reduced eigenproblem failed");

  std::vector<int> order(static_cast<std::size_t>(rank));
  std::iota(order.begin(), order.end(), 0);
  const Eigen::VectorXd& lam = reactive.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double la = std::abs(lam(a));
    const double lb = std::abs(lam(b));
    if (la != lb) return la < lb;
    return lam(a) < lam(b);
  });

  CharModeSet out;
  out.kept_count = keep;
  out.discarded_directions = discarded;
  out.context = z.context;
  out.contour = z.contour;
  out.currents.resize(n, keep);
  for (int i = 0; i < keep; ++i) {
    const int src = order[static_cast<std::size_t>(i)];
    const Eigen::VectorXd a = inv_sqrt.asDiagonal() * reactive.eigenvectors().col(src);
    Eigen::VectorXd current = uk * a;
    if (discarded > 0) current += ud * (back * a);
    const double power = current.dot(z.r * current);
    if (!(power > 0.0)) throw NumericalError("characteristic current with non-positive power");
    const double factor = 1.0 / std::sqrt(power);
    current *= factor;
    Eigen::Index peak = 0;
    current.cwiseAbs().maxCoeff(&peak);
    if (current(peak) < 0.0) current = -current;
    out.currents.col(i) = current;
    out.eigenvalues.push_back(lam(src));
    out.normalization.push_back(factor);
  }
  return out;
}

Complex current_field(const Contour& contour, const WaveContext& ctx,
                      std::span<const Complex> current, Point2 point) {
  if (static_cast<int>(current.size()) != contour.size()) {
    throw DomainError("current length does not match the contour");
  }
  if (contour.contains_strictly(point)) throw DomainError("field point inside the scatterer");
  const double near = near_zone_radius(contour, ctx);
  Complex sum = 0.0;
  for (int j = 0; j < contour.size(); ++j) {
    const Complex cj = current[static_cast<std::size_t>(j)];
    if (cj == 0.0) continue;
    sum += cj * segment_integral(contour, ctx, j, point, near);
  }
  return -0.25 * ctx.omega * ctx.mu * sum;
}

Complex char_near_field(const CharModeSet& modes, int idx, Point2 point) {
  if (idx < 0 || idx >= modes.kept_count) throw DomainError("mode index out of range");
  std::vector<Complex> current(static_cast<std::size_t>(modes.currents.rows()));
  for (std::size_t j = 0; j < current.size(); ++j) {
    current[j] = modes.currents(static_cast<Eigen::Index>(j), idx);
  }
  return current_field(modes.contour, modes.context, current, point);
}

std::vector<Complex> current_far_transform(const Contour& contour, const WaveContext& ctx,
                                           std::span<const Complex> current,
                                           std::span<const double> phi) {
  if (static_cast<int>(current.size()) != contour.size()) {
    throw DomainError("current length does not match the contour");
  }
  const auto mid = contour.midpoints();
  const auto len = contour.lengths();
  std::vector<Complex> out(phi.size(), 0.0);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double cx = std::cos(phi[i]);
    const double cy = std::sin(phi[i]);
    Complex f = 0.0;
    for (std::size_t j = 0; j < mid.size(); ++j) {
      f += current[j] * len[j] * std::polar(1.0, -ctx.k * (cx * mid[j].x + cy * mid[j].y));
    }
    out[i] = f;
  }
  return out;
}

Complex RadiationPattern::inner(const RadiationPattern& a, const RadiationPattern& b) {
  if (a.values.size() != b.values.size() || a.values.empty()) {
    throw DomainError("patterns sampled on different grids");
  }
  Complex sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) sum += std::conj(a.values[i]) * b.values[i];
  return sum / static_cast<double>(a.values.size());
}

RadiationPattern far_pattern(const CharModeSet& modes, int idx, std::span<const double> phi) {
  if (idx < 0 || idx >= modes.kept_count) throw DomainError("mode index out of range");
  if (phi.empty()) throw DomainError("empty angle grid");
  const WaveContext& ctx = modes.context;
  const auto mid = modes.contour.midpoints();
  const auto len = modes.contour.lengths();

  RadiationPattern out;
  out.phi_grid.assign(phi.begin(), phi.end());
  out.normalization_constant = std::sqrt(kPi * ctx.omega * ctx.mu / 2.0);
  const Complex pre = -0.25 * ctx.omega * ctx.mu * std::sqrt(2.0 / kPi) *
                      std::polar(1.0, -0.25 * kPi) / out.normalization_constant;
  out.values.resize(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double cx = std::cos(phi[i]);
    const double cy = std::sin(phi[i]);
    Complex f = 0.0;
    for (std::size_t j = 0; j < mid.size(); ++j) {
      const double proj = ctx.k * (cx * mid[j].x + cy * mid[j].y);
      f += std::polar(modes.currents(static_cast<Eigen::Index>(j), idx) * len[j], -proj);
    }
    out.values[i] = pre * f;
  }

  double norm2 = 0.0;
  double peak = 0.0;
  std::size_t peak_at = 0;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double m = std::norm(out.values[i]);
    norm2 += m;
    if (m > peak) {
      peak = m;
      peak_at = i;
    }
  }
  norm2 /= static_cast<double>(out.values.size());
  if (!(norm2 > 0.0)) throw NumericalError("radiation pattern vanishes");
  // Reference sample for the phase: phi closest to 0, unless negligible there.
  std::size_t ref = 0;
  double best = 1e300;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double wrapped = std::remainder(phi[i], 2.0 * kPi);
    if (std::abs(wrapped) < best) {
      best = std::abs(wrapped);
      ref = i;
    }
  }
  if (std::norm(out.values[ref]) < 1e-6 * peak) ref = peak_at;
  const Complex rotate = std::abs(out.values[ref]) / out.values[ref] / std::sqrt(norm2);
  for (auto& v : out.values) v *= rotate;
  return out;
}

ModalScattering perturbation_and_scattering(std::span<const double> eigenvalues) {
  ModalScattering out;
  out.eigenvalues.assign(eigenvalues.begin(), eigenvalues.end());
  out.p_diag.reserve(eigenvalues.size());
  out.s_diag.reserve(eigenvalues.size());
  for (double lam : eigenvalues) {
    if (std::isnan(lam)) throw DomainError("NaN eigenvalue");
    if (std::isinf(lam)) {
      out.p_diag.emplace_back(0.0, 0.0);
      out.s_diag.emplace_back(1.0, 0.0);
      continue;
    }
    const Complex denom(1.0, -lam);
    out.p_diag.push_back(-1.0 / denom);
    out.s_diag.push_back(-Complex(1.0, lam) / denom);
  }
  return out;
}

std::vector<Complex> classical_scatter(const CharModeSet& modes, const ModalScattering& scattering,
                                       std::span<const Complex> incident) {
  const int n = static_cast<int>(modes.currents.rows());
  if (static_cast<int>(incident.size()) != n) throw DomainError("incident field length mismatch");
  if (static_cast<int>(scattering.p_diag.size()) < modes.kept_count) {
    throw DomainError("scattering table shorter than the mode set");
  }
  const auto len = modes.contour.lengths();
  std::vector<Complex> alpha(static_cast<std::size_t>(modes.kept_count));
  for (int m = 0; m < modes.kept_count; ++m) {
    Complex proj = 0.0;
    for (int j = 0; j < n; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      proj += modes.currents(j, m) * incident[jj] * len[jj];
    }
    alpha[static_cast<std::size_t>(m)] = -scattering.p_diag[static_cast<std::size_t>(m)] * proj;
  }
  return alpha;
}

std::vector<Complex> combine_currents(const CharModeSet& modes, std::span<const Complex> alpha) {
  if (static_cast<int>(alpha.size()) > modes.kept_count) throw DomainError("too many coefficients");
  std::vector<Complex> current(static_cast<std::size_t>(modes.currents.rows()), 0.0);
  for (std::size_t m = 0; m < alpha.size(); ++m) {
    for (std::size_t j = 0; j < current.size(); ++j) {
      current[j] += alpha[m] * modes.currents(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(m));
    }
  }
  return current;
}

}  // namespace qcm
