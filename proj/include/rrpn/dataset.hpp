// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rrpn/polygon.hpp"
#include "rrpn/rotated_box.hpp"

namespace rrpn {

/// Annotated text instance. Unreadable instances ("###" in ICDAR files,
/// difficulty 1 in MSRA-TD500) act as don't-care regions at evaluation.
struct GroundTruthInstance {
  RotatedBoxd box;
  bool readable = true;
  std::optional<std::string> transcription;

  friend bool operator==(const GroundTruthInstance&, const GroundTruthInstance&) = default;
};

enum class GtFormat { Msra, Icdar13, Icdar15 };

/// "msra", "icdar13" or "icdar15".
GtFormat parse_gt_format(std::string_view name);
std::string_view to_string(GtFormat format);

/// MSRA-TD500: "index difficulty x y w h angle" per line, (x, y) the top-left
/// of the unrotated rectangle and angle in radians about its center.
std::vector<GroundTruthInstance> parse_msra(std::string_view contents);
std::string serialize_msra(const std::vector<GroundTruthInstance>& gts);

/// ICDAR2015: "x1,y1,x2,y2,x3,y3,x4,y4,transcription", optional UTF-8 BOM.
/// Quads are fitted with quad_to_rotated_rect. Serialization writes the
/// box_vertices() corners.
std::vector<GroundTruthInstance> parse_icdar15(std::string_view contents);
std::string serialize_icdar15(const std::vector<GroundTruthInstance>& gts);

/// ICDAR2013: "left, top, right, bottom, \"transcription\"". Commas are
/// optional between the numbers; the word may itself contain commas.
std::vector<GroundTruthInstance> parse_icdar13(std::string_view contents);
std::string serialize_icdar13(const std::vector<GroundTruthInstance>& gts);

std::vector<GroundTruthInstance> parse_ground_truth(GtFormat format, std::string_view contents);
std::string serialize_ground_truth(GtFormat format, const std::vector<GroundTruthInstance>& gts);

using Quad = std::array<Point2<double>, 4>;

/// Minimum-area rotated rectangle enclosing the four points (rotating
/// calipers over their convex hull), canonicalized. Equal-area candidates
/// resolve to the smallest |theta|. Throws DegenerateInput when the points
/// span no area.
RotatedBoxd quad_to_rotated_rect(const Quad& quad);

/// Scales both sides by `factor` about the center, orientation unchanged.
RotatedBoxd enlarge_context(const RotatedBoxd& box, double factor);

/// Drops floor(remove_proportion * #unreadable) unreadable instances drawn
/// with a generator seeded by `seed`. Readable instances and the relative
/// order of survivors are preserved.
std::vector<GroundTruthInstance> filter_unreadable(const std::vector<GroundTruthInstance>& gts,
                                                   double remove_proportion, std::uint64_t seed);

/// Axis-aligned bounding rectangle of the box corners, canonicalized.
RotatedBoxd to_horizontal(const RotatedBoxd& box);

}  // namespace rrpn
