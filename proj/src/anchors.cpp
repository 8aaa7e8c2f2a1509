// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#include "rrpn/anchors.hpp"

#include <cmath>
#include <limits>

#include "rrpn/errors.hpp"

namespace rrpn {

void AnchorSpec::validate() const {
  if (scales.empty() || aspect_ratios.empty() || orientations.empty()) {
    throw InvalidArgument("AnchorSpec: scales, ratios and orientations must be non-empty");
  }
  for (double s : scales) {
    if (!(s > 0) || !std::isfinite(s)) throw InvalidArgument("AnchorSpec: scales must be positive");
  }
  for (const auto& r : aspect_ratios) {
    if (!(r.h > 0) || !(r.w > 0) || !std::isfinite(r.h) || !std::isfinite(r.w)) {
      throw InvalidArgument("AnchorSpec: aspect ratio terms must be positive");
    }
  }
  for (double o : orientations) {
    if (!in_angle_range(o)) throw InvalidArgument("AnchorSpec: orientation outside [-pi/4, 3pi/4)");
  }
  if (!(stride > 0) || !std::isfinite(stride)) throw InvalidArgument("AnchorSpec: stride must be positive");
}

std::size_t AnchorGrid::index_of(int row, int col, std::size_t orientation, std::size_t ratio,
                                 std::size_t scale) const {
  const std::size_t n_s = spec.scales.size();
  const std::size_t n_r = spec.aspect_ratios.size();
  const std::size_t n_o = spec.orientations.size();
  const auto cell = static_cast<std::size_t>(row) * static_cast<std::size_t>(feat_width) +
                    static_cast<std::size_t>(col);
  return (cell * n_o + orientation) * n_r * n_s + ratio * n_s + scale;
}

AnchorGrid generate_anchors(const AnchorSpec& spec, int feat_width, int feat_height) {
  spec.validate();
  if (feat_width < 1 || feat_height < 1) throw InvalidArgument("generate_anchors: feature map must be >= 1x1");

  // Shapes are the same at every cell; only the center moves.
  struct Shape {
    double h, w, theta;
  };
  std::vector<Shape> shapes;
  shapes.reserve(spec.anchors_per_location());
  for (double o : spec.orientations) {
    for (const auto& r : spec.aspect_ratios) {
      const double ratio = r.w / r.h;
      for (double s : spec.scales) {
        const double side = s * spec.stride;
        const RotatedBoxd c = canonicalize(RotatedBoxd(0, 0, side / std::sqrt(ratio), side * std::sqrt(ratio), o));
        shapes.push_back({c.h, c.w, c.theta});
      }
    }
  }

  AnchorGrid grid{spec, feat_width, feat_height, {}};
  grid.boxes.reserve(static_cast<std::size_t>(feat_width) * static_cast<std::size_t>(feat_height) * shapes.size());
  for (int row = 0; row < feat_height; ++row) {
    const double cy = (row + 0.5) * spec.stride;
    for (int col = 0; col < feat_width; ++col) {
      const double cx = (col + 0.5) * spec.stride;
      for (const Shape& sh : shapes) grid.boxes.emplace_back(cx, cy, sh.h, sh.w, sh.theta);
    }
  }
  return grid;
}

std::vector<IndexedAnchor> filter_border(const AnchorGrid& grid, const ImageSize& img, double padding_factor) {
  if (!(padding_factor >= 0)) throw InvalidArgument("filter_border: padding factor must be >= 0");
  const double px = padding_factor * img.width;
  const double py = padding_factor * img.height;
  const double x_lo = -px;
  const double x_hi = img.width + px;
  const double y_lo = -py;
  const double y_hi = img.height + py;

  std::vector<IndexedAnchor> kept;
  for (std::size_t i = 0; i < grid.boxes.size(); ++i) {
    const RotatedBoxd& b = grid.boxes[i];
    bool inside = true;
    for (const auto& v : box_vertices(b).vertices) {
      if (v.x() < x_lo || v.x() > x_hi || v.y() < y_lo || v.y() > y_hi) {
        inside = false;
        break;
      }
    }
    if (inside) kept.push_back({i, b});
  }
  return kept;
}

std::optional<std::size_t> fit_domain_orientation(double theta, const std::vector<double>& orientations,
                                                  double half_width) {
  // Boundary points are equidistant from two orientations up to rounding.
  const double limit = half_width + 1e-12;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < orientations.size(); ++i) {
    if (angle_gap(theta, orientations[i]) > limit) continue;
    if (!best || orientations[i] < orientations[*best]) best = i;
  }
  return best;
}

}  // namespace rrpn
