// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rrpn/angle.hpp"
#include "rrpn/rotated_box.hpp"

namespace rrpn {

/// Aspect ratio given as h:w, e.g. {1, 8} for a 1:8 text-line anchor.
struct AspectRatio {
  double h = 1;
  double w = 1;
};

/// Rotation-anchor layout for one feature-map level.
///
/// For scale s and ratio h:w = 1:r an anchor has area (s * stride)^2 with
/// h = s * stride / sqrt(r) and w = s * stride * sqrt(r).
struct AnchorSpec {
  std::vector<double> scales{8, 16, 32};
  std::vector<AspectRatio> aspect_ratios{{1, 2}, {1, 5}, {1, 8}};
  std::vector<double> orientations{-kPi<double> / 6, 0.0,
                                   kPi<double> / 6,  kPi<double> / 3,
                                   kPi<double> / 2,  2 * kPi<double> / 3};
  double stride = 16;

  std::size_t anchors_per_location() const {
    return scales.size() * aspect_ratios.size() * orientations.size();
  }

  /// Throws InvalidArgument unless every list is non-empty, scales, ratios
  /// and stride are positive, and orientations lie in [-pi/4, 3pi/4).
  void validate() const;
};

/// Dense anchor lattice. boxes[idx] with
///   idx = ((row * feat_width + col) * n_orient + o) * n_ratio * n_scale + r * n_scale + s
/// i.e. row-major over cells, then orientation, ratio, scale.
struct AnchorGrid {
  AnchorSpec spec;
  int feat_width = 0;
  int feat_height = 0;
  std::vector<RotatedBoxd> boxes;

  std::size_t index_of(int row, int col, std::size_t orientation, std::size_t ratio,
                       std::size_t scale) const;
};

AnchorGrid generate_anchors(const AnchorSpec& spec, int feat_width, int feat_height);

struct IndexedAnchor {
  std::size_t index;
  RotatedBoxd box;
};

/// Keeps anchors whose four corners lie within the image grown by
/// padding_factor times its size on every side (0 keeps only anchors fully
/// inside the image).
std::vector<IndexedAnchor> filter_border(const AnchorGrid& grid, const ImageSize& img,
                                         double padding_factor);

/// Index of the orientation whose fit domain (|angle_sub(theta, o)| <= half_width)
/// contains theta. When theta sits on a shared boundary the lower orientation
/// wins. Empty when no orientation is within range.
std::optional<std::size_t> fit_domain_orientation(double theta, const std::vector<double>& orientations,
                                                  double half_width = kPi<double> / 12);

}  // namespace rrpn
