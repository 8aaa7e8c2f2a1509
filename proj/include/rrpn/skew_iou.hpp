// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <thread>
#include <tuple>
#include <vector>

#include <Eigen/Core>

#include "rrpn/polygon.hpp"
#include "rrpn/rotated_box.hpp"

namespace rrpn {

namespace detail {

// Parallel/collinear edges are rejected when |cross(r, s)| <= kParallelEps * |r| * |s|.
inline constexpr double kParallelEps = 1e-9;
// Slack on the vertex-inside-box test.
inline constexpr double kInsideEps = 1e-9;
// Point-set entries closer than this are merged.
inline constexpr double kDuplicateEps = 1e-8;

template <typename Scalar>
void add_unique(std::vector<Point2<Scalar>>& pts, const Point2<Scalar>& p) {
  const Scalar tol2 = Scalar(kDuplicateEps) * Scalar(kDuplicateEps);
  for (const auto& q : pts) {
    if ((q - p).squaredNorm() < tol2) return;
  }
  pts.push_back(p);
}

template <typename Scalar>
void add_edge_crossings(const Polygon<Scalar>& pa, const Polygon<Scalar>& pb,
                        std::vector<Point2<Scalar>>& pts) {
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2<Scalar>& p = pa[i];
    const Point2<Scalar> r = pa[(i + 1) % 4] - p;
    for (std::size_t j = 0; j < 4; ++j) {
      const Point2<Scalar>& q = pb[j];
      const Point2<Scalar> s = pb[(j + 1) % 4] - q;
      const Scalar denom = cross2<Scalar>(r, s);
      if (std::abs(denom) <= Scalar(kParallelEps) * r.norm() * s.norm()) continue;
      const Point2<Scalar> qp = q - p;
      const Scalar t = cross2<Scalar>(qp, s) / denom;
      const Scalar u = cross2<Scalar>(qp, r) / denom;
      if (t >= Scalar(0) && t <= Scalar(1) && u >= Scalar(0) && u <= Scalar(1)) {
        add_unique(pts, Point2<Scalar>(p + t * r));
      }
    }
  }
}

// Lexicographic field order; used to make the pairwise kernel exactly symmetric.
template <typename Scalar>
bool box_less(const RotatedBox<Scalar>& a, const RotatedBox<Scalar>& b) {
  return std::tie(a.x, a.y, a.h, a.w, a.theta) < std::tie(b.x, b.y, b.h, b.w, b.theta);
}

}  // namespace detail

/// Sort points anticlockwise by angle about their centroid; equal angles are
/// ordered by distance to the centroid.
template <typename Scalar>
void sort_anticlockwise(std::vector<Point2<Scalar>>& pts) {
  if (pts.size() < 2) return;
  Point2<Scalar> centroid = Point2<Scalar>::Zero();
  for (const auto& p : pts) centroid += p;
  centroid /= Scalar(pts.size());
  struct Keyed {
    Scalar angle;
    Scalar dist2;
    Point2<Scalar> p;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(pts.size());
  for (const auto& p : pts) {
    const Point2<Scalar> d = p - centroid;
    keyed.push_back({std::atan2(d.y(), d.x()), d.squaredNorm(), p});
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& l, const Keyed& r) {
    return l.angle != r.angle ? l.angle < r.angle : l.dist2 < r.dist2;
  });
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = keyed[i].p;
}

/// Intersection region of two boxes as an anticlockwise convex polygon:
/// edge crossings, plus corners of either box lying inside the other.
/// Disjoint boxes give an empty polygon; boxes that only touch give a
/// polygon of zero area.
template <typename Scalar>
Polygon<Scalar> intersection_polygon(const RotatedBox<Scalar>& a, const RotatedBox<Scalar>& b) {
  const Polygon<Scalar> pa = box_vertices(a);
  const Polygon<Scalar> pb = box_vertices(b);
  Polygon<Scalar> out;
  auto& pts = out.vertices;
  pts.reserve(8);
  detail::add_edge_crossings(pa, pb, pts);
  for (const auto& v : pa.vertices) {
    if (contains(b, v, Scalar(detail::kInsideEps))) detail::add_unique(pts, v);
  }
  for (const auto& v : pb.vertices) {
    if (contains(a, v, Scalar(detail::kInsideEps))) detail::add_unique(pts, v);
  }
  sort_anticlockwise(pts);
  return out;
}

/// Intersection over union of two rotated rectangles, in [0, 1].
template <typename Scalar>
Scalar skew_iou(const RotatedBox<Scalar>& a, const RotatedBox<Scalar>& b) {
  if (detail::box_less(b, a)) return skew_iou(b, a);
  const Scalar inter = polygon_area(intersection_polygon(a, b));
  if (!(inter > Scalar(0))) return Scalar(0);
  const Scalar uni = a.area() + b.area() - inter;
  if (!(uni > Scalar(0))) return Scalar(0);
  return std::clamp(inter / uni, Scalar(0), Scalar(1));
}

template <typename Scalar>
using IouMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// All pairwise skew IoUs; entry (i, j) is skew_iou(as[i], bs[j]) exactly.
/// Large batches are split by rows across threads; each entry is computed
/// independently so the result does not depend on the schedule.
template <typename Scalar>
IouMatrix<Scalar> skew_iou_matrix(std::span<const RotatedBox<Scalar>> as,
                                  std::span<const RotatedBox<Scalar>> bs) {
  const auto rows = static_cast<Eigen::Index>(as.size());
  const auto cols = static_cast<Eigen::Index>(bs.size());
  IouMatrix<Scalar> m(rows, cols);
  if (rows == 0 || cols == 0) return m;

  auto fill_rows = [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index i = begin; i < end; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = skew_iou(as[i], bs[j]);
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const Eigen::Index work = rows * cols;
  if (hw == 1 || work < 16384 || rows < 2) {
    fill_rows(0, rows);
    return m;
  }
  const auto n_threads = std::min<Eigen::Index>(hw, rows);
  const Eigen::Index chunk = (rows + n_threads - 1) / n_threads;
  {
    std::vector<std::jthread> workers;
    workers.reserve(static_cast<std::size_t>(n_threads));
    for (Eigen::Index begin = 0; begin < rows; begin += chunk) {
      workers.emplace_back(fill_rows, begin, std::min(rows, begin + chunk));
    }
  }  // joined here
  return m;
}

template <typename Scalar>
IouMatrix<Scalar> skew_iou_matrix(const std::vector<RotatedBox<Scalar>>& as,
                                  const std::vector<RotatedBox<Scalar>>& bs) {
  return skew_iou_matrix(std::span<const RotatedBox<Scalar>>(as),
                         std::span<const RotatedBox<Scalar>>(bs));
}

}  // namespace rrpn
