// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <ostream>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "rrpn/angle.hpp"
#include "rrpn/errors.hpp"
#include "rrpn/polygon.hpp"

namespace rrpn {

/// Image extent in pixels.
struct ImageSize {
  int width = 1;
  int height = 1;

  ImageSize() = default;
  ImageSize(int w, int h) : width(w), height(h) {
    if (w < 1 || h < 1) throw InvalidArgument("ImageSize: width and height must be >= 1");
  }
};

/// Rotation about the origin by `angle`, in the orientation convention shared
/// by every kernel in this library:
///
///   [ cos a   sin a ]
///   [-sin a   cos a ]
///
/// In image coordinates (y pointing down) this turns the +x axis towards -y,
/// i.e. anticlockwise as the image is viewed on screen.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> rotation2(Scalar angle) {
  const Scalar c = std::cos(angle);
  const Scalar s = std::sin(angle);
  Eigen::Matrix<Scalar, 2, 2> r;
  r << c, s, -s, c;
  return r;
}

/// A rectangle given by its center (x, y), short side h, long side w and
/// orientation theta of the long side. theta is always stored wrapped into
/// [-pi/4, 3pi/4); the constructor rejects non-finite values and
/// non-positive sides. The w >= h convention is enforced by canonicalize().
template <typename Scalar>
struct RotatedBox {
  Scalar x;
  Scalar y;
  Scalar h;
  Scalar w;
  Scalar theta;

  RotatedBox(Scalar cx, Scalar cy, Scalar height, Scalar width, Scalar angle)
      : x(cx), y(cy), h(height), w(width), theta(angle) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(h) || !std::isfinite(w) ||
        !std::isfinite(theta)) {
      throw InvalidArgument("RotatedBox: non-finite field");
    }
    if (!(h > Scalar(0)) || !(w > Scalar(0))) {
      throw InvalidArgument("RotatedBox: sides must be positive");
    }
    theta = normalize_angle(theta);
  }

  Point2<Scalar> center() const { return {x, y}; }
  Scalar area() const { return w * h; }
  bool is_canonical() const { return w >= h && in_angle_range(theta); }

  template <typename NewScalar>
  RotatedBox<NewScalar> cast() const {
    return {static_cast<NewScalar>(x), static_cast<NewScalar>(y), static_cast<NewScalar>(h),
            static_cast<NewScalar>(w), static_cast<NewScalar>(theta)};
  }

  friend bool operator==(const RotatedBox&, const RotatedBox&) = default;
};

using RotatedBoxd = RotatedBox<double>;
using RotatedBoxf = RotatedBox<float>;

template <typename Scalar>
std::ostream& operator<<(std::ostream& os, const RotatedBox<Scalar>& b) {
  return os << "(x=" << b.x << ", y=" << b.y << ", h=" << b.h << ", w=" << b.w
            << ", theta=" << b.theta << ")";
}

/// Long side becomes w. When the sides are swapped the orientation turns by a
/// quarter, so the covered region is unchanged.
template <typename Scalar>
RotatedBox<Scalar> canonicalize(const RotatedBox<Scalar>& box) {
  if (!(box.h > Scalar(0)) || !(box.w > Scalar(0))) {
    throw InvalidArgument("canonicalize: sides must be positive");
  }
  if (box.w < box.h) {
    return {box.x, box.y, box.w, box.h, box.theta + kPi<Scalar> / 2};
  }
  return {box.x, box.y, box.h, box.w, box.theta};
}

/// The four corners, anticlockwise (positive shoelace area). Corner k is the
/// local corner (-w/2,-h/2), (w/2,-h/2), (w/2,h/2), (-w/2,h/2) mapped through
/// rotation2(theta) about the center.
template <typename Scalar>
Polygon<Scalar> box_vertices(const RotatedBox<Scalar>& box) {
  const Scalar c = std::cos(box.theta);
  const Scalar s = std::sin(box.theta);
  const Scalar hw = box.w / 2;
  const Scalar hh = box.h / 2;
  const Scalar local[4][2] = {{-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}};
  Polygon<Scalar> poly;
  poly.vertices.reserve(4);
  for (const auto& uv : local) {
    poly.vertices.emplace_back(box.x + c * uv[0] + s * uv[1], box.y - s * uv[0] + c * uv[1]);
  }
  return poly;
}

/// Coordinates of p in the box frame: (along w, along h), origin at the center.
template <typename Scalar>
Point2<Scalar> to_box_frame(const RotatedBox<Scalar>& box, const Point2<Scalar>& p) {
  const Scalar c = std::cos(box.theta);
  const Scalar s = std::sin(box.theta);
  const Scalar dx = p.x() - box.x;
  const Scalar dy = p.y() - box.y;
  return {c * dx - s * dy, s * dx + c * dy};
}

/// Closed containment test with an absolute slack `eps` on each side.
template <typename Scalar>
bool contains(const RotatedBox<Scalar>& box, const Point2<Scalar>& p, Scalar eps = Scalar(0)) {
  const Point2<Scalar> uv = to_box_frame(box, p);
  return std::abs(uv.x()) <= box.w / 2 + eps && std::abs(uv.y()) <= box.h / 2 + eps;
}

/// Homogeneous transform T(c) R(alpha) T(-c) that rotates an image of size
/// `img` by alpha about its center.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> image_rotation_transform(Scalar alpha, const ImageSize& img) {
  const Scalar cx = Scalar(img.width) / 2;
  const Scalar cy = Scalar(img.height) / 2;
  Eigen::Matrix<Scalar, 3, 3> to_origin = Eigen::Matrix<Scalar, 3, 3>::Identity();
  to_origin(0, 2) = -cx;
  to_origin(1, 2) = -cy;
  Eigen::Matrix<Scalar, 3, 3> rot = Eigen::Matrix<Scalar, 3, 3>::Identity();
  rot.template topLeftCorner<2, 2>() = rotation2(alpha);
  Eigen::Matrix<Scalar, 3, 3> back = Eigen::Matrix<Scalar, 3, 3>::Identity();
  back(0, 2) = cx;
  back(1, 2) = cy;
  return back * rot * to_origin;
}

/// Ground-truth box after rotating the whole image by alpha in [0, 2pi)
/// about its center. Sides are unchanged; theta' = normalize(theta + alpha).
template <typename Scalar>
RotatedBox<Scalar> rotate_ground_truth(const RotatedBox<Scalar>& box, Scalar alpha,
                                       const ImageSize& img) {
  if (!std::isfinite(alpha) || alpha < Scalar(0) || alpha >= 2 * kPi<Scalar>) {
    throw InvalidArgument("rotate_ground_truth: alpha must lie in [0, 2pi)");
  }
  const Eigen::Matrix<Scalar, 3, 1> c = image_rotation_transform(alpha, img) *
                                        Eigen::Matrix<Scalar, 3, 1>(box.x, box.y, Scalar(1));
  return {c.x(), c.y(), box.h, box.w, box.theta + alpha};
}

}  // namespace rrpn
