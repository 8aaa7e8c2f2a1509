// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rrpn/matching.hpp"

namespace rrpn {

/// Detection interchange format: one detection per line,
///   "cx cy w h theta score\n"
/// theta in radians, '.' decimal separator. Writers emit six decimals.
/// Boxes are canonicalized on read.
std::vector<Detection> parse_detections(std::string_view contents);

std::string format_detection(const Detection& det);
std::string serialize_detections(const std::vector<Detection>& dets);

/// Box-only variant of the same layout; a missing score column is accepted.
std::vector<RotatedBoxd> parse_boxes(std::string_view contents);

}  // namespace rrpn
