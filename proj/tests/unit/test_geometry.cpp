// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rrpn/angle.hpp"
#include "rrpn/rotated_box.hpp"
#include "support/oracles.hpp"

using namespace rrpn;
using doctest::Approx;

namespace {

constexpr double kPiD = kPi<double>;

bool same_vertex_set(const Polygond& a, const Polygond& b, double tol) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a.vertices) {
    const bool found = std::any_of(b.vertices.begin(), b.vertices.end(),
                                   [&](const auto& q) { return (p - q).norm() <= tol; });
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("normalize_angle") {
  CHECK(normalize_angle(3 * kPiD / 4) == Approx(-kPiD / 4).epsilon(1e-15));
  CHECK(normalize_angle(kPiD / 8) == kPiD / 8);
  CHECK(normalize_angle(-kPiD / 2) == Approx(kPiD / 2));
  CHECK(normalize_angle(-kPiD / 4) == -kPiD / 4);
  CHECK(normalize_angle(10 * kPiD + 0.1) == Approx(0.1));
  CHECK_THROWS_AS(normalize_angle(std::numeric_limits<double>::quiet_NaN()), InvalidArgument);
  CHECK_THROWS_AS(normalize_angle(std::numeric_limits<double>::infinity()), InvalidArgument);
}

TEST_CASE("normalize_angle is idempotent and lands in range") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-100, 100);
  for (int i = 0; i < 20000; ++i) {
    const double t = d(rng);
    const double n = normalize_angle(t);
    REQUIRE(n >= -kPiD / 4);
    REQUIRE(n < 3 * kPiD / 4);
    REQUIRE(normalize_angle(n) == n);
    // differs from t by an integer multiple of pi
    const double k = (n - t) / kPiD;
    REQUIRE(std::abs(k - std::round(k)) < 1e-9);
  }
}

TEST_CASE("angle_sub") {
  CHECK(angle_sub(0.0, 0.0) == 0.0);
  CHECK(angle_sub(kPiD / 2, 2 * kPiD / 3) == Approx(-kPiD / 6));
  CHECK(angle_sub(-kPiD / 6, 2 * kPiD / 3) == Approx(kPiD / 6));
  CHECK_THROWS_AS(angle_sub(std::nan(""), 0.0), InvalidArgument);
}

TEST_CASE("RotatedBox construction validates and normalizes") {
  const RotatedBoxd b(0, 0, 2, 4, kPiD);
  CHECK(b.theta == Approx(0.0));
  CHECK_THROWS_AS(RotatedBoxd(0, 0, 0, 4, 0), InvalidArgument);
  CHECK_THROWS_AS(RotatedBoxd(0, 0, 2, -1, 0), InvalidArgument);
  CHECK_THROWS_AS(RotatedBoxd(std::nan(""), 0, 2, 4, 0), InvalidArgument);
  CHECK_THROWS_AS(ImageSize(0, 10), InvalidArgument);
}

TEST_CASE("canonicalize") {
  const RotatedBoxd same = canonicalize(RotatedBoxd(0, 0, 2, 4, 0));
  CHECK(same == RotatedBoxd(0, 0, 2, 4, 0));

  const RotatedBoxd tall = canonicalize(RotatedBoxd(0, 0, 4, 2, 0));
  CHECK(tall.h == 2);
  CHECK(tall.w == 4);
  CHECK(tall.theta == Approx(kPiD / 2));

  const RotatedBoxd square = canonicalize(RotatedBoxd(1, 1, 3, 3, kPiD));
  CHECK(square.x == 1);
  CHECK(square.h == 3);
  CHECK(square.w == 3);
  CHECK(square.theta == Approx(0.0));
}

TEST_CASE("canonicalize preserves the covered region") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> side(0.5, 50), ang(-7, 7), pos(-100, 100);
  for (int i = 0; i < 2000; ++i) {
    const double x = pos(rng), y = pos(rng), h = side(rng), w = side(rng), t = ang(rng);
    const RotatedBoxd raw(x, y, h, w, t);
    const RotatedBoxd c = canonicalize(raw);
    REQUIRE(c.is_canonical());
    REQUIRE(same_vertex_set(box_vertices(raw), box_vertices(c), 1e-9 * std::max(1.0, std::abs(x) + std::abs(y) + w + h)));
  }
}

TEST_CASE("box_vertices") {
  SUBCASE("axis aligned") {
    Polygond expected{{{-2, -1}, {2, -1}, {2, 1}, {-2, 1}}};
    CHECK(same_vertex_set(box_vertices(RotatedBoxd(0, 0, 2, 4, 0)), expected, 1e-12));
  }
  SUBCASE("rotated square") {
    const double r = std::sqrt(2.0);
    Polygond expected{{{0, -r}, {r, 0}, {0, r}, {-r, 0}}};
    CHECK(same_vertex_set(box_vertices(RotatedBoxd(0, 0, 2, 2, kPiD / 4)), expected, 1e-12));
  }
  SUBCASE("pi/6 about (5, 5)") {
    // Hand-applied rotation [c s; -s c] with c = sqrt(3)/2, s = 1/2 to the
    // corners (+-2, +-1).
    Polygond expected{{{2.767949192431, 5.133974596216},
                       {6.232050807569, 3.133974596216},
                       {7.232050807569, 4.866025403784},
                       {3.767949192431, 6.866025403784}}};
    const Polygond got = box_vertices(RotatedBoxd(5, 5, 2, 4, kPiD / 6));
    CHECK(same_vertex_set(got, expected, 1e-11));
  }
  SUBCASE("anticlockwise order") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
      const RotatedBoxd b = testing::random_box(rng, -50, 50, 1, 30);
      CHECK(shoelace_area(box_vertices(b)) == Approx(b.area()).epsilon(1e-12));
    }
  }
}

TEST_CASE("rotate_ground_truth") {
  const ImageSize img(400, 300);
  const RotatedBoxd box(100, 50, 20, 80, 0);

  SUBCASE("alpha = 0 is the identity") {
    const RotatedBoxd r = rotate_ground_truth(box, 0.0, img);
    CHECK(r.x == Approx(box.x));
    CHECK(r.y == Approx(box.y));
    CHECK(r.h == box.h);
    CHECK(r.w == box.w);
    CHECK(r.theta == box.theta);
  }
  SUBCASE("image center is a fixed point") {
    const RotatedBoxd centered(200, 150, 20, 80, 0.3);
    const RotatedBoxd r = rotate_ground_truth(centered, kPiD / 2, img);
    CHECK(r.x == Approx(200));
    CHECK(r.y == Approx(150));
    CHECK(r.w == 80);
    CHECK(r.theta == Approx(normalize_angle(0.3 + kPiD / 2)));
  }
  SUBCASE("matrix product, pi/6") {
    // c + R(pi/6) (p - c) with c = (200, 150), p - c = (-100, -100).
    const RotatedBoxd r = rotate_ground_truth(box, kPiD / 6, img);
    CHECK(r.x == Approx(63.39745962155613).epsilon(1e-12));
    CHECK(r.y == Approx(113.39745962155612).epsilon(1e-12));
    CHECK(r.theta == Approx(kPiD / 6));
  }
  SUBCASE("box corners move with the image") {
    // Rotating every corner with the same transform lands on the new box's corners.
    const double alpha = 1.1;
    const auto m = image_rotation_transform(alpha, img);
    const RotatedBoxd r = rotate_ground_truth(box, alpha, img);
    Polygond moved;
    for (const auto& v : box_vertices(box).vertices) {
      const Eigen::Vector3d p = m * Eigen::Vector3d(v.x(), v.y(), 1);
      moved.vertices.emplace_back(p.x(), p.y());
    }
    CHECK(same_vertex_set(moved, box_vertices(r), 1e-9));
  }
  SUBCASE("out of range alpha") {
    CHECK_THROWS_AS(rotate_ground_truth(box, -0.1, img), InvalidArgument);
    CHECK_THROWS_AS(rotate_ground_truth(box, 2 * kPiD, img), InvalidArgument);
  }
}

TEST_CASE("rotate_ground_truth by alpha then 2pi - alpha is the identity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> alpha(1e-3, 2 * kPiD - 1e-3);
  const ImageSize img(640, 480);
  for (int i = 0; i < 2000; ++i) {
    const RotatedBoxd b = testing::random_box(rng, 0, 600, 2, 100);
    const double a = alpha(rng);
    const RotatedBoxd back = rotate_ground_truth(rotate_ground_truth(b, a, img), 2 * kPiD - a, img);
    REQUIRE(std::abs(back.x - b.x) < 1e-6);
    REQUIRE(std::abs(back.y - b.y) < 1e-6);
    REQUIRE(std::abs(back.h - b.h) < 1e-6);
    REQUIRE(std::abs(back.w - b.w) < 1e-6);
    // theta may wrap across the range seam; compare modulo pi.
    REQUIRE(angle_gap(back.theta, b.theta) < 1e-6);
  }
}
