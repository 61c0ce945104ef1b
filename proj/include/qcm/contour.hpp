// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <variant>
#include <vector>

#include "qcm/quadrature.hpp"
#include "qcm/types.hpp"

namespace qcm {

struct CircleShape {
  double radius = 1.0;
};

struct EllipseShape {
  double semi_x = 1.0;
  double semi_y = 1.0;
};

// |x/a|^p + |y/b|^p = 1 with p >= 2 (no corners).
struct SuperellipseShape {
  double semi_x = 1.0;
  double semi_y = 1.0;
  double exponent = 4.0;
};

using ShapeTag = std::variant<CircleShape, EllipseShape, SuperellipseShape>;

// Largest distance of the curve from the origin.
double bounding_radius(const ShapeTag& shape);

// True when p lies strictly inside the closed curve.
bool shape_contains_strictly(const ShapeTag& shape, Point2 p);

struct QuadraturePoint {
  Point2 point;
  double weight = 0.0;  // includes the arc-length Jacobian
};

// Closed curve split into equal arc-length segments, counterclockwise.
class Contour {
 public:
  static constexpr int kMinSegments = 16;

  int size() const { return static_cast<int>(midpoints_.size()); }
  std::span<const Point2> midpoints() const { return midpoints_; }
  std::span<const double> lengths() const { return lengths_; }
  double total_length() const { return total_length_; }
  double max_segment_length() const;
  const ShapeTag& shape() const { return shape_; }
  // N as requested before resolution refinement.
  int requested_segments() const { return requested_segments_; }
  bool refined() const { return requested_segments_ != size(); }

  bool contains_strictly(Point2 p) const { return shape_contains_strictly(shape_, p); }

  // Gauss-Legendre nodes along the true curve of one segment.
  std::vector<QuadraturePoint> segment_quadrature(int segment, const GaussRule& rule) const;

 private:
  friend Contour discretize_contour(const ShapeTag&, const WaveContext&, int);

  ShapeTag shape_;
  int requested_segments_ = 0;
  double total_length_ = 0.0;
  std::vector<Point2> midpoints_;
  std::vector<double> lengths_;
  std::vector<double> t_begin_;  // curve parameter bounds per segment
  std::vector<double> t_end_;
};

// Splits the curve into N >= 16 equal arc-length segments. N is raised (to
// a multiple of 4) until every segment is at most wavelength / 10 long.
Contour discretize_contour(const ShapeTag& shape, const WaveContext& ctx, int segments);

// Arc length of the whole curve by composite Gauss-Legendre quadrature.
double perimeter(const ShapeTag& shape);

}  // namespace qcm
