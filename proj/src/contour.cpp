// SPDX-License-Identifier: Apache-2.0

#include "qcm/contour.hpp"

#include <algorithm>
#include <cmath>

namespace qcm {
namespace {

constexpr int kPanelPoints = 20;

struct CurveSample {
  Point2 point;
  double speed = 0.0;  // |dx/dt|
};

void validate(const ShapeTag& shape) {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CircleShape>) {
          if (!positive(s.radius)) throw DomainError("circle radius must be positive");
        } else if constexpr (std::is_same_v<T, EllipseShape>) {
          if (!positive(s.semi_x) || !positive(s.semi_y)) {
            throw DomainError("ellipse semi-axes must be positive");
          }
        } else {
          if (!positive(s.semi_x) || !positive(s.semi_y)) {
            throw DomainError("superellipse semi-axes must be positive");
          }
          if (!(s.exponent >= 2.0) || !std::isfinite(s.exponent)) {
            throw DomainError("superellipse exponent must be >= 2");
          }
        }
      },
      shape);
}

CurveSample sample(const ShapeTag& shape, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  return std::visit(
      [&](const auto& sh) -> CurveSample {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, CircleShape>) {
          return {{sh.radius * c, sh.radius * s}, sh.radius};
        } else if constexpr (std::is_same_v<T, EllipseShape>) {
          return {{sh.semi_x * c, sh.semi_y * s}, std::hypot(sh.semi_x * s, sh.semi_y * c)};
        } else {
          // polar form r(t) = g(t)^(-1/p)
          const double p = sh.exponent;
          const double u = std::abs(c / sh.semi_x);
          const double v = std::abs(s / sh.semi_y);
          const double g = std::pow(u, p) + std::pow(v, p);
          const double dg = p * std::pow(u, p - 1.0) * std::copysign(1.0, c) * (-s / sh.semi_x) +
                            p * std::pow(v, p - 1.0) * std::copysign(1.0, s) * (c / sh.semi_y);
          const double r = std::pow(g, -1.0 / p);
          const double dr = -(1.0 / p) * r / g * dg;
          return {{r * c, r * s}, std::hypot(r, dr)};
        }
      },
      shape);
}

double arc_integral(const ShapeTag& shape, double t0, double t1) {
  const GaussRule& rule = gauss_legendre_cached(kPanelPoints);
  const double half = 0.5 * (t1 - t0);
  const double mid = 0.5 * (t1 + t0);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * sample(shape, mid + half * rule.nodes[i]).speed;
  }
  return sum * half;
}

// Cumulative arc length on a uniform panel grid in the curve parameter.
struct ArcTable {
  std::vector<double> t;
  std::vector<double> s;

  ArcTable(const ShapeTag& shape, int panels) {
    t.resize(static_cast<std::size_t>(panels) + 1);
    s.resize(t.size());
    s[0] = 0.0;
    for (int i = 0; i <= panels; ++i) t[static_cast<std::size_t>(i)] = 2.0 * kPi * i / panels;
    for (int i = 0; i < panels; ++i) {
      const auto j = static_cast<std::size_t>(i);
      s[j + 1] = s[j] + arc_integral(shape, t[j], t[j + 1]);
    }
  }

  double total() const { return s.back(); }

  // Parameter value at arc length target.
  double invert(const ShapeTag& shape, double target) const {
    if (target <= 0.0) return 0.0;
    if (target >= total()) return 2.0 * kPi;
    auto it = std::upper_bound(s.begin(), s.end(), target);
    const auto j = static_cast<std::size_t>(std::distance(s.begin(), it) - 1);
    double lo = t[j];
    double hi = t[j + 1];
    double x = lo + (target - s[j]) / (s[j + 1] - s[j]) * (hi - lo);
    for (int iter = 0; iter < 50; ++iter) {
      const double f = s[j] + arc_integral(shape, t[j], x) - target;
      if (f > 0.0) hi = x; else lo = x;
      double next = x - f / sample(shape, x).speed;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - x) < 1e-15 * (1.0 + std::abs(x))) return next;
      x = next;
    }
    return x;
  }
};

int round_up_to_multiple_of_4(int n) { return (n + 3) / 4 * 4; }

}  // namespace

double bounding_radius(const ShapeTag& shape) {
  validate(shape);
  return std::visit(
      [&](const auto& sh) -> double {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, CircleShape>) {
          return sh.radius;
        } else if constexpr (std::is_same_v<T, EllipseShape>) {
          return std::max(sh.semi_x, sh.semi_y);
        } else {
          double r = std::max(sh.semi_x, sh.semi_y);
          constexpr int kSamples = 4096;
          for (int i = 0; i < kSamples; ++i) {
            r = std::max(r, sample(shape, 2.0 * kPi * i / kSamples).point.norm());
          }
          return r * (1.0 + 1e-6);
        }
      },
      shape);
}

bool shape_contains_strictly(const ShapeTag& shape, Point2 p) {
  constexpr double kTol = 1e-12;
  return std::visit(
      [&](const auto& sh) -> bool {
        using T = std::decay_t<decltype(sh)>;
        if constexpr (std::is_same_v<T, CircleShape>) {
          return p.norm() < sh.radius * (1.0 - kTol);
        } else if constexpr (std::is_same_v<T, EllipseShape>) {
          const double u = p.x / sh.semi_x;
          const double v = p.y / sh.semi_y;
          return u * u + v * v < 1.0 - kTol;
        } else {
          const double u = std::abs(p.x / sh.semi_x);
          const double v = std::abs(p.y / sh.semi_y);
          return std::pow(u, sh.exponent) + std::pow(v, sh.exponent) < 1.0 - kTol;
        }
      },
      shape);
}

double perimeter(const ShapeTag& shape) {
  validate(shape);
  if (const auto* c = std::get_if<CircleShape>(&shape)) return 2.0 * kPi * c->radius;
  return ArcTable(shape, 1024).total();
}

double Contour::max_segment_length() const {
  return lengths_.empty() ? 0.0 : *std::max_element(lengths_.begin(), lengths_.end());
}

std::vector<QuadraturePoint> Contour::segment_quadrature(int segment, const GaussRule& rule) const {
  if (segment < 0 || segment >= size()) throw DomainError("segment index out of range");
  const auto j = static_cast<std::size_t>(segment);
  const double t0 = t_begin_[j];
  const double half = 0.5 * (t_end_[j] - t0);
  const double mid = t0 + half;
  std::vector<QuadraturePoint> out(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const CurveSample cs = sample(shape_, mid + half * rule.nodes[i]);
    out[i] = {cs.point, rule.weights[i] * half * cs.speed};
  }
  return out;
}

Contour discretize_contour(const ShapeTag& shape, const WaveContext& ctx, int segments) {
  validate(shape);
  if (segments < Contour::kMinSegments) {
    throw DomainError("contour needs at least 16 segments");
  }
  const bool is_circle = std::holds_alternative<CircleShape>(shape);
  const double length = perimeter(shape);

  int n = segments;
  const double max_len = 0.1 * ctx.wavelength;
  if (length / n > max_len) {
    n = round_up_to_multiple_of_4(static_cast<int>(std::ceil(length / max_len)));
    while (length / n > max_len) n += 4;
  }

  Contour out;
  out.shape_ = shape;
  out.requested_segments_ = segments;
  out.total_length_ = length;
  const auto count = static_cast<std::size_t>(n);
  out.midpoints_.resize(count);
  out.lengths_.assign(count, length / n);
  out.t_begin_.resize(count);
  out.t_end_.resize(count);

  if (is_circle) {
    for (int j = 0; j < n; ++j) {
      const auto i = static_cast<std::size_t>(j);
      out.t_begin_[i] = 2.0 * kPi * j / n;
      out.t_end_[i] = 2.0 * kPi * (j + 1) / n;
      out.midpoints_[i] = sample(shape, 2.0 * kPi * (j + 0.5) / n).point;
    }
    return out;
  }

  const ArcTable table(shape, std::max(1024, round_up_to_multiple_of_4(4 * n)));
  const double step = table.total() / n;
  out.total_length_ = table.total();
  std::fill(out.lengths_.begin(), out.lengths_.end(), step);
  std::vector<double> bounds(count + 1);
  bounds[0] = 0.0;
  bounds[count] = 2.0 * kPi;
  for (int j = 1; j < n; ++j) bounds[static_cast<std::size_t>(j)] = table.invert(shape, j * step);
  for (int j = 0; j < n; ++j) {
    const auto i = static_cast<std::size_t>(j);
    out.t_begin_[i] = bounds[i];
    out.t_end_[i] = bounds[i + 1];
    out.midpoints_[i] = sample(shape, table.invert(shape, (j + 0.5) * step)).point;
  }
  return out;
}

}  // namespace qcm
