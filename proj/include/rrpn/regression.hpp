// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Core>

#include "rrpn/angle.hpp"
#include "rrpn/errors.hpp"
#include "rrpn/rotated_box.hpp"

namespace rrpn {

/// Scale-invariant offsets of a box relative to an anchor.
/// Center offsets are divided by the anchor sides, sides are log-ratios and
/// the angle offset is wrapped with angle_sub.
template <typename Scalar>
struct RegressionTarget {
  Scalar v_x = 0;
  Scalar v_y = 0;
  Scalar v_h = 0;
  Scalar v_w = 0;
  Scalar v_theta = 0;

  Eigen::Matrix<Scalar, 5, 1> as_vector() const { return {v_x, v_y, v_h, v_w, v_theta}; }

  static RegressionTarget from_vector(const Eigen::Matrix<Scalar, 5, 1>& v) {
    return {v(0), v(1), v(2), v(3), v(4)};
  }

  friend bool operator==(const RegressionTarget&, const RegressionTarget&) = default;
};

using RegressionTargetd = RegressionTarget<double>;

/// Softmax output over {background, text}.
template <typename Scalar>
struct ClassScore {
  Scalar p0;
  Scalar p1;

  ClassScore(Scalar background, Scalar text) : p0(background), p1(text) {
    if (!(p0 >= 0 && p0 <= 1 && p1 >= 0 && p1 <= 1)) {
      throw InvalidArgument("ClassScore: probabilities must lie in [0, 1]");
    }
    if (std::abs(p0 + p1 - Scalar(1)) > Scalar(1e-9)) {
      throw InvalidArgument("ClassScore: probabilities must sum to 1");
    }
  }

  static ClassScore text(Scalar p) { return {Scalar(1) - p, p}; }

  Scalar operator[](int label) const { return label == 0 ? p0 : p1; }
};

/// 0 = background, 1 = text.
class ClassLabel {
 public:
  explicit ClassLabel(int l) : value_(l) {
    if (l != 0 && l != 1) throw InvalidArgument("ClassLabel: label must be 0 or 1");
  }
  int value() const noexcept { return value_; }

  static ClassLabel background() { return ClassLabel(0); }
  static ClassLabel text() { return ClassLabel(1); }

 private:
  int value_;
};

template <typename Scalar>
struct LossConfig {
  Scalar lambda = 1;
};

template <typename Scalar>
RegressionTarget<Scalar> encode(const RotatedBox<Scalar>& gt, const RotatedBox<Scalar>& anchor) {
  if (!(gt.h > 0) || !(gt.w > 0)) throw InvalidArgument("encode: ground truth sides must be positive");
  if (!(anchor.h > 0) || !(anchor.w > 0)) throw InvalidArgument("encode: anchor sides must be positive");
  return {(gt.x - anchor.x) / anchor.w, (gt.y - anchor.y) / anchor.h, std::log(gt.h / anchor.h),
          std::log(gt.w / anchor.w), angle_sub(gt.theta, anchor.theta)};
}

/// Inverse of encode. The result is canonicalized, so a decoded box with
/// w < h comes back with its sides swapped and theta turned by pi/2.
template <typename Scalar>
RotatedBox<Scalar> decode(const RotatedBox<Scalar>& anchor, const RegressionTarget<Scalar>& v) {
  const auto t = v.as_vector();
  if (!t.allFinite()) throw DivergentRegression("decode: non-finite regression target");
  const Scalar h = anchor.h * std::exp(v.v_h);
  const Scalar w = anchor.w * std::exp(v.v_w);
  if (!std::isfinite(h) || !std::isfinite(w)) {
    throw DivergentRegression("decode: side length overflowed");
  }
  if (!(h > 0) || !(w > 0)) throw DivergentRegression("decode: side length underflowed to zero");
  const RotatedBox<Scalar> box(v.v_x * anchor.w + anchor.x, v.v_y * anchor.h + anchor.y, h, w,
                               normalize_angle(v.v_theta + anchor.theta));
  return canonicalize(box);
}

template <typename Scalar>
Scalar smooth_l1(Scalar x) {
  const Scalar ax = std::abs(x);
  return ax < Scalar(1) ? Scalar(0.5) * x * x : ax - Scalar(0.5);
}

template <typename Scalar>
Scalar reg_loss(const RegressionTarget<Scalar>& v_star, const RegressionTarget<Scalar>& v) {
  const Eigen::Matrix<Scalar, 5, 1> d = v_star.as_vector() - v.as_vector();
  Scalar sum(0);
  for (int i = 0; i < 5; ++i) sum += smooth_l1(d(i));
  return sum;
}

/// Probabilities are clamped at this floor so p_l = 0 yields a large finite loss.
inline constexpr double kProbabilityFloor = 1e-12;

template <typename Scalar>
Scalar cls_loss(const ClassScore<Scalar>& p, ClassLabel l) {
  return -std::log(std::max(p[l.value()], Scalar(kProbabilityFloor)));
}

/// cls_loss + lambda * l * reg_loss. Background samples carry no box term.
template <typename Scalar>
Scalar multitask_loss(const ClassScore<Scalar>& p, ClassLabel l, const RegressionTarget<Scalar>& v_star,
                      const RegressionTarget<Scalar>& v, const LossConfig<Scalar>& cfg = {}) {
  if (!(cfg.lambda > 0)) throw InvalidArgument("multitask_loss: lambda must be positive");
  const Scalar cls = cls_loss(p, l);
  if (l.value() == 0) return cls;
  return cls + cfg.lambda * reg_loss(v_star, v);
}

}  // namespace rrpn
