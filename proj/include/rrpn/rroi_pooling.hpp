// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "rrpn/errors.hpp"
#include "rrpn/rotated_box.hpp"

namespace rrpn {

template <typename Scalar>
using Plane = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense C x H x W feature map. spatial_scale is feature pixels per image
/// pixel (1/16 for a stride-16 backbone).
template <typename Scalar>
class FeatureMap {
 public:
  FeatureMap(std::vector<Plane<Scalar>> planes, Scalar spatial_scale)
      : planes_(std::move(planes)), spatial_scale_(spatial_scale) {
    if (planes_.empty()) throw InvalidArgument("FeatureMap: needs at least one channel");
    if (!(spatial_scale_ > 0) || !std::isfinite(spatial_scale_)) {
      throw InvalidArgument("FeatureMap: spatial scale must be positive and finite");
    }
    const auto rows = planes_.front().rows();
    const auto cols = planes_.front().cols();
    if (rows < 1 || cols < 1) throw InvalidArgument("FeatureMap: empty spatial extent");
    for (const auto& p : planes_) {
      if (p.rows() != rows || p.cols() != cols) {
        throw InvalidArgument("FeatureMap: channel extents differ");
      }
      if (!p.allFinite()) throw InvalidArgument("FeatureMap: non-finite value");
    }
  }

  /// Single-channel convenience constructor.
  FeatureMap(Plane<Scalar> plane, Scalar spatial_scale)
      : FeatureMap(std::vector<Plane<Scalar>>{std::move(plane)}, spatial_scale) {}

  static FeatureMap constant(int channels, int height, int width, Scalar value, Scalar spatial_scale) {
    return FeatureMap(std::vector<Plane<Scalar>>(static_cast<std::size_t>(channels),
                                                 Plane<Scalar>::Constant(height, width, value)),
                      spatial_scale);
  }

  int channels() const noexcept { return static_cast<int>(planes_.size()); }
  int height() const noexcept { return static_cast<int>(planes_.front().rows()); }
  int width() const noexcept { return static_cast<int>(planes_.front().cols()); }
  Scalar spatial_scale() const noexcept { return spatial_scale_; }

  const Plane<Scalar>& channel(int c) const { return planes_.at(static_cast<std::size_t>(c)); }
  Plane<Scalar>& channel(int c) { return planes_.at(static_cast<std::size_t>(c)); }

 private:
  std::vector<Plane<Scalar>> planes_;
  Scalar spatial_scale_;
};

struct PoolConfig {
  int pooled_h = 7;
  int pooled_w = 7;
};

/// C planes of pooled_h x pooled_w.
template <typename Scalar>
using PooledFeatures = std::vector<Plane<Scalar>>;

namespace detail {

inline void check_pool_config(const PoolConfig& cfg) {
  if (cfg.pooled_h < 1 || cfg.pooled_w < 1) throw InvalidArgument("PoolConfig: pooled size must be >= 1");
}

template <typename Scalar>
void check_proposal(const RotatedBox<Scalar>& p) {
  if (!(p.h > 0) || !(p.w > 0)) throw InvalidArgument("rroi_pool: proposal sides must be positive");
}

}  // namespace detail

/// Reference rotated-RoI max pooling. Written as a direct loop nest over
/// (channel, bin row, bin col, sample row, sample col) with no hoisting, and
/// kept that way so the optimized kernel has something plain to agree with.
///
/// Each bin's top-left corner is rotated about the proposal center, then a
/// floor(grid_h * SS) x floor(grid_w * SS) lattice of rotated offsets is
/// rounded (floor(v + 1/2)) to feature indices and clamped to the map. A bin
/// whose lattice would be empty samples its rotated corner once.
template <typename Scalar>
PooledFeatures<Scalar> rroi_pool_oracle(const FeatureMap<Scalar>& fm, const RotatedBox<Scalar>& proposal,
                                        const PoolConfig& cfg) {
  detail::check_pool_config(cfg);
  detail::check_proposal(proposal);
  const Scalar x = proposal.x;
  const Scalar y = proposal.y;
  const Scalar h = proposal.h;
  const Scalar w = proposal.w;
  const Scalar theta = proposal.theta;
  const Scalar ss = fm.spatial_scale();

  PooledFeatures<Scalar> out;
  for (int c = 0; c < fm.channels(); ++c) {
    const Plane<Scalar>& in = fm.channel(c);
    Plane<Scalar> pooled(cfg.pooled_h, cfg.pooled_w);
    const Scalar grid_w = w / Scalar(cfg.pooled_w);
    const Scalar grid_h = h / Scalar(cfg.pooled_h);
    for (int i = 0; i < cfg.pooled_h; ++i) {
      for (int j = 0; j < cfg.pooled_w; ++j) {
        const Scalar left = x - w / 2 + Scalar(j) * grid_w;
        const Scalar top = y - h / 2 + Scalar(i) * grid_h;
        const Scalar l_rot = (left - x) * std::cos(theta) + (top - y) * std::sin(theta) + x;
        const Scalar t_rot = (top - y) * std::cos(theta) - (left - x) * std::sin(theta) + y;
        Scalar value = -std::numeric_limits<Scalar>::infinity();
        const long k_last = std::max(0L, static_cast<long>(std::floor(grid_h * ss - Scalar(1))));
        const long l_last = std::max(0L, static_cast<long>(std::floor(grid_w * ss - Scalar(1))));
        for (long k = 0; k <= k_last; ++k) {
          for (long l = 0; l <= l_last; ++l) {
            const Scalar fx = l_rot * ss + Scalar(l) * std::cos(theta) + Scalar(k) * std::sin(theta) + Scalar(0.5);
            const Scalar fy = t_rot * ss - Scalar(l) * std::sin(theta) + Scalar(k) * std::cos(theta) + Scalar(0.5);
            long px = static_cast<long>(std::floor(fx));
            long py = static_cast<long>(std::floor(fy));
            px = std::clamp(px, 0L, static_cast<long>(fm.width() - 1));
            py = std::clamp(py, 0L, static_cast<long>(fm.height() - 1));
            if (in(py, px) > value) value = in(py, px);
          }
        }
        pooled(i, j) = value;
      }
    }
    out.push_back(std::move(pooled));
  }
  return out;
}

/// Rotated-RoI max pooling; elementwise identical to rroi_pool_oracle.
/// Sample indices are computed once per bin and shared by all channels.
template <typename Scalar>
PooledFeatures<Scalar> rroi_pool(const FeatureMap<Scalar>& fm, const RotatedBox<Scalar>& proposal,
                                 const PoolConfig& cfg) {
  detail::check_pool_config(cfg);
  detail::check_proposal(proposal);
  const Scalar x = proposal.x;
  const Scalar y = proposal.y;
  const Scalar h = proposal.h;
  const Scalar w = proposal.w;
  const Scalar cos_t = std::cos(proposal.theta);
  const Scalar sin_t = std::sin(proposal.theta);
  const Scalar ss = fm.spatial_scale();
  const int channels = fm.channels();
  const long max_x = fm.width() - 1;
  const long max_y = fm.height() - 1;
  const long stride = fm.width();

  const Scalar grid_w = w / Scalar(cfg.pooled_w);
  const Scalar grid_h = h / Scalar(cfg.pooled_h);
  const long k_last = std::max(0L, static_cast<long>(std::floor(grid_h * ss - Scalar(1))));
  const long l_last = std::max(0L, static_cast<long>(std::floor(grid_w * ss - Scalar(1))));

  PooledFeatures<Scalar> out(static_cast<std::size_t>(channels), Plane<Scalar>(cfg.pooled_h, cfg.pooled_w));
  std::vector<const Scalar*> data(static_cast<std::size_t>(channels));
  for (int c = 0; c < channels; ++c) data[static_cast<std::size_t>(c)] = fm.channel(c).data();

  std::vector<long> offsets;
  offsets.reserve(static_cast<std::size_t>((k_last + 1) * (l_last + 1)));
  for (int i = 0; i < cfg.pooled_h; ++i) {
    for (int j = 0; j < cfg.pooled_w; ++j) {
      const Scalar left = x - w / 2 + Scalar(j) * grid_w;
      const Scalar top = y - h / 2 + Scalar(i) * grid_h;
      const Scalar l_rot = (left - x) * cos_t + (top - y) * sin_t + x;
      const Scalar t_rot = (top - y) * cos_t - (left - x) * sin_t + y;

      offsets.clear();
      for (long k = 0; k <= k_last; ++k) {
        for (long l = 0; l <= l_last; ++l) {
          const Scalar fx = l_rot * ss + Scalar(l) * cos_t + Scalar(k) * sin_t + Scalar(0.5);
          const Scalar fy = t_rot * ss - Scalar(l) * sin_t + Scalar(k) * cos_t + Scalar(0.5);
          const long px = std::clamp(static_cast<long>(std::floor(fx)), 0L, max_x);
          const long py = std::clamp(static_cast<long>(std::floor(fy)), 0L, max_y);
          offsets.push_back(py * stride + px);
        }
      }
      std::sort(offsets.begin(), offsets.end());
      offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());

      for (int c = 0; c < channels; ++c) {
        const Scalar* plane = data[static_cast<std::size_t>(c)];
        Scalar value = -std::numeric_limits<Scalar>::infinity();
        for (long off : offsets) value = std::max(value, plane[off]);
        out[static_cast<std::size_t>(c)](i, j) = value;
      }
    }
  }
  return out;
}

/// Pools every proposal; result[n] is rroi_pool(fm, proposals[n], cfg).
template <typename Scalar>
std::vector<PooledFeatures<Scalar>> rroi_pool_batch(const FeatureMap<Scalar>& fm,
                                                    const std::vector<RotatedBox<Scalar>>& proposals,
                                                    const PoolConfig& cfg) {
  std::vector<PooledFeatures<Scalar>> out;
  out.reserve(proposals.size());
  for (const auto& p : proposals) out.push_back(rroi_pool(fm, p, cfg));
  return out;
}

}  // namespace rrpn
