// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

// Test-only reference computations. Nothing here calls into the library's
// geometry code; boxes are only read through their public fields.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "rrpn/rotated_box.hpp"

namespace rrpn::testing {

struct Pt {
  double x, y;
};

/// Corners computed directly from the orientation convention:
/// p = c + [cos t, sin t; -sin t, cos t] * (u, v).
inline std::vector<Pt> corners(const RotatedBoxd& b) {
  const double c = std::cos(b.theta);
  const double s = std::sin(b.theta);
  std::vector<Pt> out;
  for (auto [u, v] : {std::pair{-b.w / 2, -b.h / 2}, {b.w / 2, -b.h / 2}, {b.w / 2, b.h / 2}, {-b.w / 2, b.h / 2}}) {
    out.push_back({b.x + c * u + s * v, b.y - s * u + c * v});
  }
  return out;
}

/// Point-in-box test with the box's trig precomputed.
struct BoxFrame {
  double x, y, c, s, half_w, half_h;

  explicit BoxFrame(const RotatedBoxd& b)
      : x(b.x), y(b.y), c(std::cos(b.theta)), s(std::sin(b.theta)), half_w(b.w / 2), half_h(b.h / 2) {}

  bool inside(double px, double py) const {
    const double dx = px - x;
    const double dy = py - y;
    return std::abs(c * dx - s * dy) <= half_w && std::abs(s * dx + c * dy) <= half_h;
  }
};

inline bool inside(const RotatedBoxd& b, double px, double py) { return BoxFrame(b).inside(px, py); }

/// IoU estimated on an n x n lattice of cell centers spanning the joint
/// bounding box of both rectangles.
inline double raster_iou(const RotatedBoxd& a, const RotatedBoxd& b, int n = 1000) {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const auto& box : {a, b}) {
    for (const Pt& p : corners(box)) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
  }
  const BoxFrame fa(a), fb(b);
  const double dx = (x1 - x0) / n;
  const double dy = (y1 - y0) / n;
  long in_a = 0, in_b = 0, both = 0;
  for (int i = 0; i < n; ++i) {
    const double py = y0 + (i + 0.5) * dy;
    for (int j = 0; j < n; ++j) {
      const double px = x0 + (j + 0.5) * dx;
      const bool ia = fa.inside(px, py);
      const bool ib = fb.inside(px, py);
      in_a += ia;
      in_b += ib;
      both += ia && ib;
    }
  }
  const long uni = in_a + in_b - both;
  return uni == 0 ? 0.0 : static_cast<double>(both) / static_cast<double>(uni);
}

/// Classical IoU of two axis-aligned boxes given by center and extents.
inline double aabb_iou(const RotatedBoxd& a, const RotatedBoxd& b) {
  auto span = [](double c, double len) { return std::pair{c - len / 2, c + len / 2}; };
  // theta == 0: w runs along x, h along y.
  const auto [ax0, ax1] = span(a.x, a.w);
  const auto [ay0, ay1] = span(a.y, a.h);
  const auto [bx0, bx1] = span(b.x, b.w);
  const auto [by0, by1] = span(b.y, b.h);
  const double iw = std::max(0.0, std::min(ax1, bx1) - std::max(ax0, bx0));
  const double ih = std::max(0.0, std::min(ay1, by1) - std::max(ay0, by0));
  const double inter = iw * ih;
  return inter / (a.w * a.h + b.w * b.h - inter);
}

/// Shoelace area over a plain point list (signed, anticlockwise positive).
inline double shoelace(const std::vector<Pt>& pts) {
  double s = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Pt& p = pts[i];
    const Pt& q = pts[(i + 1) % pts.size()];
    s += p.x * q.y - q.x * p.y;
  }
  return s / 2;
}

/// Smallest enclosing-rectangle area found by sweeping orientations in
/// `step_deg` increments over [0, 90).
inline double brute_force_min_rect_area(const std::vector<Pt>& pts, double step_deg = 0.1) {
  double best = 1e300;
  const int steps = static_cast<int>(std::round(90.0 / step_deg));
  for (int k = 0; k < steps; ++k) {
    const double a = k * step_deg * M_PI / 180.0;
    const double c = std::cos(a), s = std::sin(a);
    double u0 = 1e300, u1 = -1e300, v0 = 1e300, v1 = -1e300;
    for (const Pt& p : pts) {
      const double u = c * p.x + s * p.y;
      const double v = -s * p.x + c * p.y;
      u0 = std::min(u0, u);
      u1 = std::max(u1, u);
      v0 = std::min(v0, v);
      v1 = std::max(v1, v);
    }
    best = std::min(best, (u1 - u0) * (v1 - v0));
  }
  return best;
}

/// Random canonical box: center in [lo, hi]^2, sides in [min_side, max_side].
inline RotatedBoxd random_box(std::mt19937_64& rng, double lo, double hi, double min_side, double max_side) {
  std::uniform_real_distribution<double> c(lo, hi);
  std::uniform_real_distribution<double> side(min_side, max_side);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  double a = side(rng), b = side(rng);
  if (a < b) std::swap(a, b);
  const double cx = c(rng);
  const double cy = c(rng);
  return RotatedBoxd(cx, cy, b, a, ang(rng));
}

}  // namespace rrpn::testing
