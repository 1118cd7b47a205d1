/*
Copyright 2026 The ADRC Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef ADRC_PARAM_QUANT_HPP
#define ADRC_PARAM_QUANT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <vector>

#include "adrc/common.hpp"
#include "adrc/direction.hpp"

namespace adrc {

/// 3-bit non-uniform diffuseness codebook. Levels are denser near 0, where
/// the ear is most sensitive to coherence errors; roughly geometric in
/// (1 - diffuseness).
inline constexpr std::array<double, 8> kDiffusenessLevels{
    0.0, 0.04, 0.10, 0.19, 0.32, 0.47, 0.67, 0.95};

/// Nearest-level quantization of a diffuseness value (input clamped to [0,1]).
inline int quantize_diffuseness(double psi) {
  psi = std::clamp(psi, 0.0, 1.0);
  int best = 0;
  double best_d = std::abs(psi - kDiffusenessLevels[0]);
  for (int i = 1; i < 8; ++i) {
    const double d = std::abs(psi - kDiffusenessLevels[static_cast<std::size_t>(i)]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

inline double dequantize_diffuseness(int index) {
  if (index < 0 || index > 7) throw Error("diffuseness index out of range");
  return kDiffusenessLevels[static_cast<std::size_t>(index)];
}

/// DOA bit width per diffuseness index: 11 bits for non-diffuse sound down
/// to 2 bits when fully diffuse. Monotone non-increasing.
inline constexpr std::array<int, 8> kDoaBitTable{11, 11, 10, 8, 7, 5, 3, 2};

inline int doa_bits(int diffuseness_index) {
  if (diffuseness_index < 0 || diffuseness_index > 7)
    throw Error("diffuseness index out of range");
  return kDoaBitTable[static_cast<std::size_t>(diffuseness_index)];
}

inline constexpr int kMinDoaBits = 2;
inline constexpr int kMaxDoaBits = 11;

/// Near-uniform joint azimuth/elevation quantization grid.
///
/// Construction: elevation rings at uniform spacing delta = pi / n_rings,
/// symmetric about the equator (one ring on it), single points at both
/// poles, and round(2 pi cos(el) / delta) azimuth points per ring with
/// origin 0. n_rings is the largest odd count whose total stays within
/// 2^bits points. Indices run south pole, rings bottom-up (azimuth index
/// within each ring), north pole.
class SphericalGrid {
 public:
  explicit SphericalGrid(int bits) : bits_(bits) {
    if (bits < kMinDoaBits || bits > kMaxDoaBits)
      throw ConfigError("spherical grid bits out of range");
    const int cap = 1 << bits;
    int rings = 1;
    for (int n = 1;; n += 2) {
      const int total = total_points(n);
      if (total <= cap)
        rings = n;
      else
        break;
    }
    n_rings_ = rings;
    const double delta = kPi / n_rings_;
    ring_elevation_.push_back(-kPi / 2.0);
    ring_count_.push_back(1);
    ring_offset_.push_back(0);
    int offset = 1;
    for (int j = 0; j < n_rings_; ++j) {
      const double el = (j - (n_rings_ - 1) / 2.0) * delta;
      const int cnt = azimuth_count(el, delta);
      ring_elevation_.push_back(el);
      ring_count_.push_back(cnt);
      ring_offset_.push_back(offset);
      offset += cnt;
    }
    ring_elevation_.push_back(kPi / 2.0);
    ring_count_.push_back(1);
    ring_offset_.push_back(offset);
    size_ = offset + 1;
  }

  int bits() const { return bits_; }
  int size() const { return size_; }
  int rings() const { return n_rings_; }

  /// Nominal angular step (the elevation ring spacing), degrees.
  double nominal_step_deg() const { return 180.0 / n_rings_; }

  Direction dequantize(int index) const {
    if (index < 0 || index >= size_)
      throw Error("spherical index out of range");
    // rings() + 2 entries including poles
    const int nr = static_cast<int>(ring_count_.size());
    int r = nr - 1;
    for (int i = 1; i < nr; ++i) {
      if (index < ring_offset_[static_cast<std::size_t>(i)]) {
        r = i - 1;
        break;
      }
    }
    const int a = index - ring_offset_[static_cast<std::size_t>(r)];
    const int cnt = ring_count_[static_cast<std::size_t>(r)];
    const double az = 2.0 * kPi * a / cnt;
    return make_direction(az, ring_elevation_[static_cast<std::size_t>(r)]);
  }

  /// Index of the grid point with the smallest central angle to `dir`
  /// (ties broken towards the lowest index).
  int quantize(const Direction& dir) const {
    const Vec3 u = to_unit_vector(dir);
    const double delta = kPi / n_rings_;
    // candidate rings within +-2 of the elevation-nearest ring
    const double coord = (dir.elevation + kPi / 2.0 - delta / 2.0) / delta;
    const int center = static_cast<int>(std::lround(coord)) + 1;
    int best_index = 0;
    double best_dot = -2.0;
    const int nr = static_cast<int>(ring_count_.size());
    for (int r = std::max(0, center - 2); r <= std::min(nr - 1, center + 2); ++r) {
      const int cnt = ring_count_[static_cast<std::size_t>(r)];
      const double el = ring_elevation_[static_cast<std::size_t>(r)];
      // nearest azimuth points on this ring; check both rounding neighbors
      double az = std::atan2(u[1], u[0]);
      if (az < 0.0) az += 2.0 * kPi;
      const double step = 2.0 * kPi / cnt;
      const long base = std::lround(az / step);
      for (long da = -1; da <= 1; ++da) {
        const long a = ((base + da) % cnt + cnt) % cnt;
        const double pz = std::sin(el);
        const double pc = std::cos(el);
        const double paz = step * static_cast<double>(a);
        const Vec3 p{std::cos(paz) * pc, std::sin(paz) * pc, pz};
        const double d = dot(p, u);
        const int index = ring_offset_[static_cast<std::size_t>(r)] + static_cast<int>(a);
        if (d > best_dot + 1e-15 ||
            (d > best_dot - 1e-15 && index < best_index)) {
          best_dot = d;
          best_index = index;
        }
      }
    }
    return best_index;
  }

  /// Shared per-width instances (grids are immutable).
  static const SphericalGrid& get(int bits) {
    static const std::array<SphericalGrid, kMaxDoaBits - kMinDoaBits + 1> grids = [] {
      return std::array<SphericalGrid, kMaxDoaBits - kMinDoaBits + 1>{
          SphericalGrid(2),  SphericalGrid(3), SphericalGrid(4),
          SphericalGrid(5),  SphericalGrid(6), SphericalGrid(7),
          SphericalGrid(8),  SphericalGrid(9), SphericalGrid(10),
          SphericalGrid(11)};
    }();
    if (bits < kMinDoaBits || bits > kMaxDoaBits)
      throw ConfigError("spherical grid bits out of range");
    return grids[static_cast<std::size_t>(bits - kMinDoaBits)];
  }

 private:
  static int azimuth_count(double el, double delta) {
    return std::max(1, static_cast<int>(std::lround(2.0 * kPi * std::cos(el) / delta)));
  }

  static int total_points(int rings) {
    const double delta = kPi / rings;
    int total = 2;
    for (int j = 0; j < rings; ++j) {
      const double el = (j - (rings - 1) / 2.0) * delta;
      total += azimuth_count(el, delta);
    }
    return total;
  }

  int bits_;
  int n_rings_ = 1;
  int size_ = 0;
  std::vector<double> ring_elevation_;  // incl. poles
  std::vector<int> ring_count_;
  std::vector<int> ring_offset_;
};

inline int spherical_quantize(const Direction& dir, int bits) {
  return SphericalGrid::get(bits).quantize(dir);
}

inline Direction spherical_dequantize(int index, int bits) {
  return SphericalGrid::get(bits).dequantize(index);
}

}  // namespace adrc

#endif  // ADRC_PARAM_QUANT_HPP
