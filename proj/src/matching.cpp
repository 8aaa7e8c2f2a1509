// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#include "rrpn/matching.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rrpn/errors.hpp"
#include "rrpn/skew_iou.hpp"

namespace rrpn {

void MatchConfig::validate() const {
  if (!(neg_iou >= 0 && neg_iou < pos_iou && pos_iou <= 1)) {
    throw InvalidArgument("MatchConfig: need 0 <= neg_iou < pos_iou <= 1");
  }
  if (!(angle_limit > 0 && angle_limit <= kPi<double> / 2)) {
    throw InvalidArgument("MatchConfig: angle_limit must lie in (0, pi/2]");
  }
}

Detection::Detection(RotatedBoxd b, double s) : box(b), score(s) {
  if (!std::isfinite(score) || score < 0 || score > 1) throw InvalidArgument("Detection: score must lie in [0, 1]");
}

std::vector<MatchLabel> assign_labels_from_overlaps(const Eigen::MatrixXd& iou, const Eigen::MatrixXd& angle_gap,
                                                    const MatchConfig& cfg) {
  cfg.validate();
  if (iou.rows() != angle_gap.rows() || iou.cols() != angle_gap.cols()) {
    throw InvalidArgument("assign_labels: IoU and angle matrices differ in shape");
  }
  const Eigen::Index n_anchors = iou.rows();
  const Eigen::Index n_gts = iou.cols();
  std::vector<MatchLabel> labels(static_cast<std::size_t>(n_anchors), MatchLabel::negative());
  if (n_gts == 0) return labels;

  for (Eigen::Index a = 0; a < n_anchors; ++a) {
    Eigen::Index best = 0;
    for (Eigen::Index g = 1; g < n_gts; ++g) {
      if (iou(a, g) > iou(a, best)) best = g;
    }
    const double max_iou = iou(a, best);
    MatchLabel& label = labels[static_cast<std::size_t>(a)];
    if (max_iou > cfg.pos_iou) {
      const double gap = angle_gap(a, best);
      if (gap < cfg.angle_limit) {
        label = MatchLabel::positive(static_cast<std::size_t>(best));
      } else if (gap > cfg.angle_limit) {
        label = MatchLabel::negative();
      } else {
        label = MatchLabel::ignore();
      }
    } else if (max_iou < cfg.neg_iou) {
      label = MatchLabel::negative();
    } else {
      label = MatchLabel::ignore();
    }
  }

  for (Eigen::Index g = 0; g < n_gts; ++g) {
    double best_iou = 0;
    for (Eigen::Index a = 0; a < n_anchors; ++a) {
      if (angle_gap(a, g) < cfg.angle_limit) best_iou = std::max(best_iou, iou(a, g));
    }
    if (!(best_iou > 0)) continue;
    for (Eigen::Index a = 0; a < n_anchors; ++a) {
      MatchLabel& label = labels[static_cast<std::size_t>(a)];
      if (iou(a, g) == best_iou && angle_gap(a, g) < cfg.angle_limit && !label.is_positive()) {
        label = MatchLabel::positive(static_cast<std::size_t>(g));
      }
    }
  }
  return labels;
}

std::vector<MatchLabel> assign_labels(const std::vector<RotatedBoxd>& anchors, const std::vector<RotatedBoxd>& gts,
                                      const MatchConfig& cfg) {
  const Eigen::MatrixXd iou = skew_iou_matrix(anchors, gts);
  Eigen::MatrixXd gaps(iou.rows(), iou.cols());
  for (Eigen::Index a = 0; a < gaps.rows(); ++a) {
    for (Eigen::Index g = 0; g < gaps.cols(); ++g) {
      gaps(a, g) = angle_gap(anchors[static_cast<std::size_t>(a)].theta, gts[static_cast<std::size_t>(g)].theta);
    }
  }
  return assign_labels_from_overlaps(iou, gaps, cfg);
}

bool nms_suppresses(const Detection& kept, const Detection& candidate, const NmsConfig& cfg) {
  const double iou = skew_iou(kept.box, candidate.box);
  if (iou > cfg.iou_keep) return true;
  return iou >= cfg.iou_low && angle_gap(candidate.box.theta, kept.box.theta) < cfg.angle_limit;
}

std::vector<std::size_t> skew_nms_indices(const std::vector<Detection>& dets, const NmsConfig& cfg) {
  if (!(cfg.iou_low < cfg.iou_keep)) throw InvalidArgument("skew_nms: iou_low must be below iou_keep");
  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return dets[l].score > dets[r].score; });

  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    const bool suppressed = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
      return nms_suppresses(dets[k], dets[idx], cfg);
    });
    if (!suppressed) kept.push_back(idx);
  }
  return kept;
}

std::vector<Detection> skew_nms(const std::vector<Detection>& dets, const NmsConfig& cfg) {
  std::vector<Detection> out;
  for (std::size_t i : skew_nms_indices(dets, cfg)) out.push_back(dets[i]);
  return out;
}

std::vector<Detection> skew_nms(const std::vector<Detection>& dets, double iou_keep, double iou_low,
                                double angle_limit) {
  return skew_nms(dets, NmsConfig{iou_keep, iou_low, angle_limit});
}

}  // namespace rrpn
