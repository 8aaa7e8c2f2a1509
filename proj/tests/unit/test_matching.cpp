// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "rrpn/matching.hpp"
#include "rrpn/skew_iou.hpp"
#include "support/oracles.hpp"

using namespace rrpn;

namespace {

constexpr double kPiD = kPi<double>;

std::vector<Detection> random_detections(std::mt19937_64& rng, int n, bool coarse_scores) {
  std::uniform_real_distribution<double> score(0, 1);
  std::uniform_int_distribution<int> bucket(0, 4);
  std::vector<Detection> dets;
  for (int i = 0; i < n; ++i) {
    const RotatedBoxd b = testing::random_box(rng, 0, 60, 4, 40);
    dets.emplace_back(b, coarse_scores ? bucket(rng) / 4.0 : score(rng));
  }
  return dets;
}

}  // namespace

TEST_CASE("assign_labels examples") {
  const RotatedBoxd gt(50, 50, 10, 40, 0.2);
  SUBCASE("anchor identical to a gt") {
    const auto labels = assign_labels({gt}, {gt});
    REQUIRE(labels.size() == 1);
    CHECK(labels[0] == MatchLabel::positive(0));
  }
  SUBCASE("low overlap is negative") {
    const RotatedBoxd far(500, 500, 10, 40, 0.2);
    const RotatedBoxd near(50, 50, 10, 40, 0.2);
    const auto labels = assign_labels({far, near}, {gt});
    CHECK(labels[0].is_negative());
    CHECK(labels[1].is_positive());
  }
  SUBCASE("no ground truth") {
    const auto labels = assign_labels({gt, gt}, {});
    CHECK(labels.size() == 2);
    CHECK(std::all_of(labels.begin(), labels.end(), [](const MatchLabel& l) { return l.is_negative(); }));
  }
  SUBCASE("high overlap with a wide angle gap is negative") {
    // No pair of rectangles reaches IoU 0.8 at a pi/6 gap, so this one is
    // fed straight through the overlap form.
    Eigen::MatrixXd iou(2, 1), gap(2, 1);
    iou << 0.8, 0.9;
    gap << kPiD / 6, 0.0;
    const auto labels = assign_labels_from_overlaps(iou, gap);
    CHECK(labels[0].is_negative());
    CHECK(labels[1] == MatchLabel::positive(0));
  }
  SUBCASE("mid-band overlap is ignored") {
    Eigen::MatrixXd iou(2, 1), gap(2, 1);
    iou << 0.5, 0.9;
    gap << 0.0, 0.0;
    const auto labels = assign_labels_from_overlaps(iou, gap);
    CHECK(labels[0].is_ignore());
    CHECK(labels[1].is_positive());
  }
  SUBCASE("best anchor rescues a gt below the threshold") {
    Eigen::MatrixXd iou(3, 1), gap(3, 1);
    iou << 0.1, 0.45, 0.6;
    gap << 0.0, 0.0, kPiD / 4;
    // anchor 2 has the highest IoU but a wide gap; anchor 1 is best among aligned
    const auto labels = assign_labels_from_overlaps(iou, gap);
    CHECK(labels[0].is_negative());
    CHECK(labels[1] == MatchLabel::positive(0));
    CHECK(labels[2].is_ignore());
  }
  SUBCASE("threshold positives bind to the max-IoU gt, lowest index on ties") {
    Eigen::MatrixXd iou(1, 3), gap = Eigen::MatrixXd::Zero(1, 3);
    iou << 0.75, 0.9, 0.9;
    CHECK(assign_labels_from_overlaps(iou, gap)[0] == MatchLabel::positive(1));
  }
  CHECK_THROWS_AS(assign_labels({gt}, {gt}, MatchConfig{0.3, 0.7, 0.1}), InvalidArgument);
}

TEST_CASE("assign_labels depends only on the overlap matrices") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<RotatedBoxd> anchors, gts;
    for (int i = 0; i < 60; ++i) anchors.push_back(testing::random_box(rng, 0, 80, 5, 40));
    for (int i = 0; i < 4; ++i) gts.push_back(testing::random_box(rng, 0, 80, 5, 40));
    // independent matrix: raster-free, built from the scalar IoU and an
    // angle gap computed by hand from the raw angles
    Eigen::MatrixXd iou(60, 4), gap(60, 4);
    for (int a = 0; a < 60; ++a) {
      for (int g = 0; g < 4; ++g) {
        iou(a, g) = skew_iou(anchors[a], gts[g]);
        double d = std::fmod(std::abs(anchors[a].theta - gts[g].theta), kPiD);
        gap(a, g) = std::min(d, kPiD - d);
      }
    }
    const auto direct = assign_labels(anchors, gts);
    const auto via = assign_labels_from_overlaps(iou, gap);
    REQUIRE(direct.size() == anchors.size());
    for (std::size_t i = 0; i < direct.size(); ++i) {
      // gaps may differ in the last bit; only compare where it cannot matter
      const bool near_limit = ((gap.row(static_cast<Eigen::Index>(i)).array() - kPiD / 12).abs() < 1e-9).any();
      if (!near_limit) CHECK(direct[i] == via[i]);
    }
  }
}

TEST_CASE("every aligned, overlapped gt receives a positive") {
  std::mt19937_64 rng(33);
  const MatchConfig cfg;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<RotatedBoxd> anchors, gts;
    for (int i = 0; i < 80; ++i) anchors.push_back(testing::random_box(rng, 0, 100, 5, 50));
    for (int i = 0; i < 5; ++i) gts.push_back(testing::random_box(rng, 0, 100, 5, 50));
    const auto labels = assign_labels(anchors, gts, cfg);
    for (std::size_t g = 0; g < gts.size(); ++g) {
      bool eligible = false, covered = false;
      for (std::size_t a = 0; a < anchors.size(); ++a) {
        const bool aligned = angle_gap(anchors[a].theta, gts[g].theta) < cfg.angle_limit;
        if (aligned && skew_iou(anchors[a], gts[g]) > 0) {
          eligible = true;
          covered = covered || labels[a].is_positive();
        }
      }
      if (eligible) CHECK(covered);
    }
    for (const auto& l : labels) {
      if (l.is_positive()) CHECK(l.gt_index < gts.size());
    }
  }
}

TEST_CASE("skew_nms examples") {
  const RotatedBoxd box(10, 10, 8, 30, 0.1);
  SUBCASE("identical boxes") {
    const auto kept = skew_nms({Detection(box, 0.8), Detection(box, 0.9)});
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].score == 0.9);
  }
  SUBCASE("disjoint boxes") {
    const auto kept = skew_nms({Detection(box, 0.8), Detection(RotatedBoxd(200, 10, 8, 30, 0.1), 0.9)});
    CHECK(kept.size() == 2);
  }
  SUBCASE("IoU 0.5 band, small angle gap suppresses") {
    // w solved so that the same-center pair has IoU 0.5 at a pi/24 gap
    const RotatedBoxd a(0, 0, 8, 81.98256796027518, 0), b(0, 0, 8, 81.98256796027518, kPiD / 24);
    REQUIRE(skew_iou(a, b) == doctest::Approx(0.5).epsilon(1e-9));
    REQUIRE(std::abs(testing::raster_iou(a, b, 1000) - 0.5) < 1e-2);
    const auto kept = skew_nms({Detection(a, 0.9), Detection(b, 0.8)});
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].box == a);
  }
  SUBCASE("IoU 0.5 band, wide angle gap keeps both") {
    const RotatedBoxd a(0, 0, 10, 20.68947118250544, 0), b(0, 0, 10, 20.68947118250544, kPiD / 4);
    REQUIRE(skew_iou(a, b) == doctest::Approx(0.5).epsilon(1e-9));
    REQUIRE(std::abs(testing::raster_iou(a, b, 1000) - 0.5) < 1e-2);
    CHECK(skew_nms({Detection(a, 0.9), Detection(b, 0.8)}).size() == 2);
  }
  CHECK(skew_nms({}).empty());
  CHECK_THROWS_AS(skew_nms({}, 0.3, 0.3, 0.1), InvalidArgument);
  CHECK_THROWS_AS(Detection(box, 1.5), InvalidArgument);
}

TEST_CASE("skew_nms properties") {
  std::mt19937_64 rng(77);
  const NmsConfig cfg;
  for (int trial = 0; trial < 200; ++trial) {
    const auto dets = random_detections(rng, 25, trial % 2 == 0);
    const auto idx = skew_nms_indices(dets, cfg);
    const auto kept = skew_nms(dets, cfg);
    REQUIRE(kept.size() == idx.size());

    // subset, descending score, ties in input order
    for (std::size_t i = 0; i < idx.size(); ++i) {
      REQUIRE(kept[i] == dets[idx[i]]);
      if (i > 0) {
        REQUIRE(kept[i - 1].score >= kept[i].score);
        if (kept[i - 1].score == kept[i].score) REQUIRE(idx[i - 1] < idx[i]);
      }
    }
    // no kept pair violates the predicate in score order
    for (std::size_t i = 0; i < kept.size(); ++i) {
      for (std::size_t j = i + 1; j < kept.size(); ++j) REQUIRE(!nms_suppresses(kept[i], kept[j], cfg));
    }
    REQUIRE(skew_nms(kept, cfg) == kept);
    REQUIRE(skew_nms(dets, cfg) == kept);
  }
}

TEST_CASE("nms predicate is monotone in iou_keep") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto pair = random_detections(rng, 2, false);
    NmsConfig lo{0.5, 0.3, kPiD / 12}, hi{0.8, 0.3, kPiD / 12};
    if (nms_suppresses(pair[0], pair[1], hi)) {
      const double iou = skew_iou(pair[0].box, pair[1].box);
      const bool aligned = angle_gap(pair[0].box.theta, pair[1].box.theta) < kPiD / 12;
      // suppression at the higher threshold is either a plain IoU hit or an
      // aligned band hit, both of which also fire at the lower threshold
      REQUIRE((iou > 0.8 || (iou >= 0.3 && aligned)));
      REQUIRE(nms_suppresses(pair[0], pair[1], lo));
    }
  }
}

TEST_CASE("greedy skew_nms can keep fewer boxes at a higher iou_keep") {
  // A suppresses B at iou_keep 0.5. Raising iou_keep to 0.7 lets B survive,
  // and B then suppresses C and D, which A alone would have kept.
  const double w = 81.98256796027518;
  const Detection a(RotatedBoxd(0, 0, 8, w, 0), 0.9);
  const Detection b(RotatedBoxd(0, 0, 8, w, kPiD / 3), 0.8);
  const Detection c(RotatedBoxd(-16, 16 * std::sqrt(3.0), 8, w * 0.6, kPiD / 3), 0.7);
  const Detection d(RotatedBoxd(16, -16 * std::sqrt(3.0), 8, w * 0.6, kPiD / 3), 0.6);
  const std::vector<Detection> dets{a, b, c, d};

  const NmsConfig low_keep{0.05, 0.01, kPiD / 12};
  const NmsConfig high_keep{0.2, 0.01, kPiD / 12};
  REQUIRE(nms_suppresses(a, b, low_keep));
  REQUIRE(!nms_suppresses(a, b, high_keep));
  REQUIRE(!nms_suppresses(a, c, low_keep));
  REQUIRE(!nms_suppresses(a, d, low_keep));
  REQUIRE(nms_suppresses(b, c, high_keep));
  REQUIRE(nms_suppresses(b, d, high_keep));
  CHECK(skew_nms(dets, low_keep).size() == 3);
  CHECK(skew_nms(dets, high_keep).size() == 2);
}
