// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace rrpn {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
inline Scalar cross2(const Point2<Scalar>& a, const Point2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// Ordered vertex list. Intersections of two boxes produce at most 8
/// vertices, convex, in anticlockwise (positive signed area) order.
template <typename Scalar>
struct Polygon {
  std::vector<Point2<Scalar>> vertices;

  std::size_t size() const noexcept { return vertices.size(); }
  bool empty() const noexcept { return vertices.empty(); }
  const Point2<Scalar>& operator[](std::size_t i) const { return vertices[i]; }
};

using Polygond = Polygon<double>;

/// Fan triangulation from the first vertex: the sum of triangles
/// (v0, v_i, v_{i+1}). Expects a convex polygon in anticlockwise order;
/// fewer than three vertices have zero area.
template <typename Scalar>
Scalar polygon_area(const Polygon<Scalar>& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return Scalar(0);
  const Point2<Scalar>& apex = poly[0];
  Scalar twice_area(0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    twice_area += cross2<Scalar>(poly[i] - apex, poly[i + 1] - apex);
  }
  const Scalar area = twice_area / 2;
  return area > Scalar(0) ? area : Scalar(0);
}

/// Signed shoelace area; positive for anticlockwise input.
template <typename Scalar>
Scalar shoelace_area(const Polygon<Scalar>& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return Scalar(0);
  Scalar sum(0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % n];
    sum += p.x() * q.y() - q.x() * p.y();
  }
  return sum / 2;
}

}  // namespace rrpn
