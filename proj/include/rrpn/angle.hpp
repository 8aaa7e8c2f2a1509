// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <numbers>

#include "rrpn/errors.hpp"

namespace rrpn {

template <typename Scalar>
inline constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

/// Lower end of the half-open orientation range [-pi/4, 3pi/4).
template <typename Scalar>
inline constexpr Scalar kAngleLow = -kPi<Scalar> / 4;

/// Upper (excluded) end of the orientation range.
template <typename Scalar>
inline constexpr Scalar kAngleHigh = 3 * kPi<Scalar> / 4;

template <typename Scalar>
constexpr bool in_angle_range(Scalar theta) {
  return theta >= kAngleLow<Scalar> && theta < kAngleHigh<Scalar>;
}

/// Returns theta + k*pi for the unique integer k that lands in [-pi/4, 3pi/4).
/// Values already in range are returned bit-for-bit, so the map is idempotent.
template <typename Scalar>
Scalar normalize_angle(Scalar theta) {
  if (!std::isfinite(theta)) throw InvalidArgument("normalize_angle: non-finite angle");
  if (in_angle_range(theta)) return theta;
  const Scalar k = std::floor((theta - kAngleLow<Scalar>) / kPi<Scalar>);
  Scalar r = theta - k * kPi<Scalar>;
  // floor() on a rounded quotient can be off by one near the range ends.
  if (r >= kAngleHigh<Scalar>) r -= kPi<Scalar>;
  if (r < kAngleLow<Scalar>) r += kPi<Scalar>;
  if (!in_angle_range(r)) r = kAngleLow<Scalar>;
  return r;
}

/// The orientation difference a (-) b = a - b + k*pi, wrapped into [-pi/4, 3pi/4).
template <typename Scalar>
Scalar angle_sub(Scalar a, Scalar b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("angle_sub: non-finite angle");
  return normalize_angle(a - b);
}

/// |a (-) b|, the orientation gap used by the matching and suppression rules.
template <typename Scalar>
Scalar angle_gap(Scalar a, Scalar b) {
  return std::abs(angle_sub(a, b));
}

template <typename Scalar>
constexpr Scalar deg_to_rad(Scalar deg) {
  return deg * kPi<Scalar> / 180;
}

template <typename Scalar>
constexpr Scalar rad_to_deg(Scalar rad) {
  return rad * 180 / kPi<Scalar>;
}

}  // namespace rrpn
