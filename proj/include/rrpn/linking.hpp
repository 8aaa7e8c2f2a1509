// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "rrpn/matching.hpp"
#include "rrpn/rotated_box.hpp"

namespace rrpn {

struct LinkConfig {
  double angle_threshold_deg = 10;
};

/// A merged text line and the input positions folded into it (first entry is
/// the surviving slot).
struct LinkedSegment {
  RotatedBoxd box;
  std::vector<std::size_t> members;
};

/// Single greedy pass over pairs (i < j) in ascending order. Pair (i, j) is
/// merged into slot i when both are still valid, the center distance is below
/// the mean of the two widths, and
///   | |atan(dy / dx)| - theta_i |  <  angle_threshold   (degrees)
/// where theta_i is the current, possibly already merged, box i. A vertical
/// pair (dx = 0) has a center gradient of 90 degrees; a pair sharing its
/// center skips the angle test. The merge takes the
/// midpoint center, mean height, summed width and mean orientation.
std::vector<LinkedSegment> link_segments(const std::vector<RotatedBoxd>& proposals, const LinkConfig& cfg = {});

std::vector<RotatedBoxd> link_text_segments(const std::vector<RotatedBoxd>& proposals, const LinkConfig& cfg = {});

/// Linking on scored detections; a merged line keeps the highest member score.
std::vector<Detection> link_detections(const std::vector<Detection>& dets, const LinkConfig& cfg = {});

}  // namespace rrpn
