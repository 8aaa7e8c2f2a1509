// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "rrpn/angle.hpp"
#include "rrpn/rotated_box.hpp"

namespace rrpn {

struct MatchLabel {
  enum class Kind { Positive, Negative, Ignore };

  Kind kind = Kind::Ignore;
  std::size_t gt_index = 0;  // meaningful only for Positive

  static MatchLabel positive(std::size_t gt) { return {Kind::Positive, gt}; }
  static MatchLabel negative() { return {Kind::Negative, 0}; }
  static MatchLabel ignore() { return {Kind::Ignore, 0}; }

  bool is_positive() const { return kind == Kind::Positive; }
  bool is_negative() const { return kind == Kind::Negative; }
  bool is_ignore() const { return kind == Kind::Ignore; }

  friend bool operator==(const MatchLabel&, const MatchLabel&) = default;
};

struct MatchConfig {
  double pos_iou = 0.7;
  double neg_iou = 0.3;
  double angle_limit = kPi<double> / 12;

  void validate() const;
};

/// Scored detection; score in [0, 1].
struct Detection {
  RotatedBoxd box;
  double score;

  Detection(RotatedBoxd b, double s);

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// Labels anchors against ground truth.
///
/// Threshold rule, against the anchor's max-IoU gt g (lowest index on ties):
///   IoU > pos_iou and gap < angle_limit  -> Positive(g)
///   IoU > pos_iou and gap > angle_limit  -> Negative
///   IoU < neg_iou                        -> Negative
///   otherwise                            -> Ignore
/// Best-anchor rule: for every gt g, the anchors with gap < angle_limit that
/// reach the highest non-zero IoU with g become Positive(g) unless already
/// positive; gts are visited in index order.
///
/// `gap` is |angle_sub(theta_anchor, theta_gt)|. With no gts every anchor is Negative.
std::vector<MatchLabel> assign_labels(const std::vector<RotatedBoxd>& anchors, const std::vector<RotatedBoxd>& gts,
                                      const MatchConfig& cfg = {});

/// Same rules on precomputed anchors x gts IoU and angle-gap matrices.
std::vector<MatchLabel> assign_labels_from_overlaps(const Eigen::MatrixXd& iou, const Eigen::MatrixXd& angle_gap,
                                                    const MatchConfig& cfg = {});

struct NmsConfig {
  double iou_keep = 0.7;
  double iou_low = 0.3;
  double angle_limit = kPi<double> / 12;
};

/// True when an already kept detection removes `candidate`: IoU above
/// iou_keep, or IoU within [iou_low, iou_keep] with an orientation gap below
/// angle_limit.
bool nms_suppresses(const Detection& kept, const Detection& candidate, const NmsConfig& cfg);

/// Greedy skew NMS in descending score order (ties by input position).
/// The output keeps that order.
std::vector<Detection> skew_nms(const std::vector<Detection>& dets, const NmsConfig& cfg = {});

std::vector<Detection> skew_nms(const std::vector<Detection>& dets, double iou_keep, double iou_low,
                                double angle_limit);

/// Input positions of the detections skew_nms keeps, in output order.
std::vector<std::size_t> skew_nms_indices(const std::vector<Detection>& dets, const NmsConfig& cfg = {});

}  // namespace rrpn
