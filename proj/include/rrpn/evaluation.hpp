// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rrpn/dataset.hpp"
#include "rrpn/matching.hpp"

namespace rrpn {

/// Integer tallies behind a precision/recall pair. Summing counts over images
/// and then calling the accessors gives corpus-level figures.
struct EvalCounts {
  std::size_t matched = 0;
  std::size_t counted_detections = 0;  // detections minus don't-care hits
  std::size_t readable_gts = 0;
  std::size_t dont_care = 0;

  double precision() const;
  double recall() const;
  double f_measure() const;

  EvalCounts& operator+=(const EvalCounts& o);
};

struct EvalResult {
  double precision = 0;
  double recall = 0;
  double f_measure = 0;
  /// (detection index, ground-truth index), in matching order.
  std::vector<std::pair<std::size_t, std::size_t>> matches;
  EvalCounts counts;
};

/// One-to-one greedy matching by descending score (ties by position). A
/// detection takes the unmatched readable gt of highest skew IoU when that IoU
/// exceeds iou_thresh. Unmatched detections overlapping an unreadable gt by
/// more than iou_thresh are don't-care and leave the precision denominator.
/// Empty denominators give 0.
///
/// This is a skew-IoU one-to-one protocol, an approximation of the official
/// benchmark tools (which also allow many-to-one matches).
EvalResult evaluate(const std::vector<Detection>& dets, const std::vector<GroundTruthInstance>& gts,
                    double iou_thresh = 0.5);

}  // namespace rrpn
