// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#include "rrpn/evaluation.hpp"

#include <algorithm>
#include <numeric>

#include "rrpn/errors.hpp"
#include "rrpn/skew_iou.hpp"

namespace rrpn {

double EvalCounts::precision() const {
  return counted_detections == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(counted_detections);
}

double EvalCounts::recall() const {
  return readable_gts == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(readable_gts);
}

double EvalCounts::f_measure() const {
  const double p = precision();
  const double r = recall();
  return p + r > 0 ? 2 * p * r / (p + r) : 0.0;
}

EvalCounts& EvalCounts::operator+=(const EvalCounts& o) {
  matched += o.matched;
  counted_detections += o.counted_detections;
  readable_gts += o.readable_gts;
  dont_care += o.dont_care;
  return *this;
}

EvalResult evaluate(const std::vector<Detection>& dets, const std::vector<GroundTruthInstance>& gts,
                    double iou_thresh) {
  if (!(iou_thresh > 0 && iou_thresh < 1)) throw InvalidArgument("evaluate: iou_thresh must lie in (0, 1)");

  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return dets[l].score > dets[r].score; });

  EvalResult res;
  std::vector<bool> taken(gts.size(), false);
  for (const auto& gt : gts) res.counts.readable_gts += gt.readable ? 1 : 0;

  for (std::size_t d : order) {
    std::size_t best_gt = gts.size();
    double best_iou = 0;
    bool hits_dont_care = false;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      const double iou = skew_iou(dets[d].box, gts[g].box);
      if (!gts[g].readable) {
        hits_dont_care = hits_dont_care || iou > iou_thresh;
        continue;
      }
      if (taken[g]) continue;
      if (iou > best_iou) {
        best_iou = iou;
        best_gt = g;
      }
    }
    if (best_gt < gts.size() && best_iou > iou_thresh) {
      taken[best_gt] = true;
      res.matches.emplace_back(d, best_gt);
      ++res.counts.matched;
      ++res.counts.counted_detections;
    } else if (hits_dont_care) {
      ++res.counts.dont_care;
    } else {
      ++res.counts.counted_detections;
    }
  }

  res.precision = res.counts.precision();
  res.recall = res.counts.recall();
  res.f_measure = res.counts.f_measure();
  return res;
}

}  // namespace rrpn
