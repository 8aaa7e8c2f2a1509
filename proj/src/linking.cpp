// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#include "rrpn/linking.hpp"

#include <algorithm>
#include <cmath>

#include "rrpn/angle.hpp"
#include "rrpn/errors.hpp"

namespace rrpn {

namespace {

double center_gradient_deg(const RotatedBoxd& a, const RotatedBoxd& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  if (dx == 0) return 90.0;
  return rad_to_deg(std::abs(std::atan(dy / dx)));
}

}  // namespace

std::vector<LinkedSegment> link_segments(const std::vector<RotatedBoxd>& proposals, const LinkConfig& cfg) {
  if (!(cfg.angle_threshold_deg > 0)) throw InvalidArgument("LinkConfig: angle threshold must be positive");
  const std::size_t n = proposals.size();
  std::vector<LinkedSegment> slots;
  slots.reserve(n);
  for (std::size_t k = 0; k < n; ++k) slots.push_back({proposals[k], {k}});
  std::vector<bool> valid(n, true);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!valid[i] || !valid[j]) continue;
      const RotatedBoxd& pi = slots[i].box;
      const RotatedBoxd& pj = slots[j].box;
      const double mean_width = (pi.w + pj.w) / 2;
      const double dis = std::hypot(pi.x - pj.x, pi.y - pj.y);
      // Coincident centers have no gradient; they pass the angle test.
      const bool aligned = dis == 0 ||
                           std::abs(center_gradient_deg(pi, pj) - rad_to_deg(pi.theta)) < cfg.angle_threshold_deg;
      if (dis < mean_width && aligned) {
        const RotatedBoxd merged((pi.x + pj.x) / 2, (pi.y + pj.y) / 2, (pi.h + pj.h) / 2, pi.w + pj.w,
                                 (pi.theta + pj.theta) / 2);
        slots[i].box = canonicalize(merged);
        slots[i].members.insert(slots[i].members.end(), slots[j].members.begin(), slots[j].members.end());
        valid[j] = false;
      }
    }
  }

  std::vector<LinkedSegment> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (valid[k]) out.push_back(std::move(slots[k]));
  }
  return out;
}

std::vector<RotatedBoxd> link_text_segments(const std::vector<RotatedBoxd>& proposals, const LinkConfig& cfg) {
  std::vector<RotatedBoxd> out;
  for (auto& seg : link_segments(proposals, cfg)) out.push_back(seg.box);
  return out;
}

std::vector<Detection> link_detections(const std::vector<Detection>& dets, const LinkConfig& cfg) {
  std::vector<RotatedBoxd> boxes;
  boxes.reserve(dets.size());
  for (const auto& d : dets) boxes.push_back(d.box);
  std::vector<Detection> out;
  for (const auto& seg : link_segments(boxes, cfg)) {
    double score = 0;
    for (std::size_t m : seg.members) score = std::max(score, dets[m].score);
    out.emplace_back(seg.box, score);
  }
  return out;
}

}  // namespace rrpn
