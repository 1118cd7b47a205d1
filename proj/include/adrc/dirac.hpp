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

#ifndef ADRC_DIRAC_HPP
#define ADRC_DIRAC_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <vector>

#include "adrc/bands.hpp"
#include "adrc/common.hpp"
#include "adrc/direction.hpp"
#include "adrc/filterbank.hpp"

namespace adrc {

/// Per-band, per-slot sound-field observation: the active intensity vector
/// and the field energy, both summed over the band's bins.
struct BandObservation {
  Vec3 intensity{0.0, 0.0, 0.0};
  double energy = 0.0;
};

/// Moving-average length for the diffuseness estimate. 32 ms at 1.25 ms slots
/// is 25.6 slots; rounded up so the window is at least as long.
inline constexpr int kDiffusenessWindowSlots = 26;

/// Intensity floor (relative to energy) below which the DOA is held.
inline constexpr double kDoaHoldRelative = 1e-9;
/// Absolute energy floor below which a band is treated as silent.
inline constexpr double kEnergyFloor = 1e-12;

/// Computes per-band intensity and energy from one FOA slot (channels W, Y,
/// Z, X in ACN order).
///
/// The particle velocity is taken as u = -(X, Y, Z): the B-format dipole
/// channels point towards the source while the acoustic velocity of the
/// arriving wave points away from it. With this sign, the propagation-
/// direction intensity I = sum_k Re(W u*) makes dv = -I/||I|| equal the
/// panning direction.
inline std::vector<BandObservation> band_observe(const TfSlot& slot,
                                                 const BandGrouping& bands) {
  if (slot.ch.size() != 4)
    throw ConfigError("band_observe expects exactly 4 FOA channels");
  const auto& w = slot.ch[0];
  const auto& y = slot.ch[1];
  const auto& z = slot.ch[2];
  const auto& x = slot.ch[3];
  std::vector<BandObservation> out(static_cast<std::size_t>(bands.num_bands()));
  for (int b = 0; b < bands.num_bands(); ++b) {
    BandObservation& o = out[static_cast<std::size_t>(b)];
    double ix = 0.0, iy = 0.0, iz = 0.0, e = 0.0;
    for (int k = bands.begin(b); k < bands.end(b); ++k) {
      const std::complex<double> wk(w[k]);
      const std::complex<double> xk(x[k]);
      const std::complex<double> yk(y[k]);
      const std::complex<double> zk(z[k]);
      ix -= wk.real() * xk.real() + wk.imag() * xk.imag();
      iy -= wk.real() * yk.real() + wk.imag() * yk.imag();
      iz -= wk.real() * zk.real() + wk.imag() * zk.imag();
      e += 0.5 * (std::norm(wk) + std::norm(xk) + std::norm(yk) + std::norm(zk));
    }
    o.intensity = {ix, iy, iz};
    o.energy = e;
  }
  return out;
}

/// Direction from a propagation intensity vector: dv = -I/||I||.
inline Direction direction_from_intensity(const Vec3& intensity) {
  return to_direction(Vec3{-intensity[0], -intensity[1], -intensity[2]});
}

/// Streaming DirAC parameter estimation: per-band diffuseness via a 26-slot
/// moving average of intensity and energy, and per-band DOA with a hold rule
/// for degenerate (silent or direction-free) observations.
class DiracAnalyzer {
 public:
  explicit DiracAnalyzer(const BandGrouping& bands)
      : bands_(bands),
        sum_i_(static_cast<std::size_t>(bands.num_bands()), Vec3{0, 0, 0}),
        sum_e_(static_cast<std::size_t>(bands.num_bands()), 0.0),
        last_doa_(static_cast<std::size_t>(bands.num_bands())) {}

  const BandGrouping& bands() const { return bands_; }

  void reset() {
    history_.clear();
    std::fill(sum_e_.begin(), sum_e_.end(), 0.0);
    std::fill(sum_i_.begin(), sum_i_.end(), Vec3{0, 0, 0});
    std::fill(last_doa_.begin(), last_doa_.end(), Direction{});
  }

  /// Pushes one slot of observations into the moving-average state.
  void push(const std::vector<BandObservation>& obs) {
    history_.push_back(obs);
    for (std::size_t b = 0; b < obs.size(); ++b) {
      for (int c = 0; c < 3; ++c) sum_i_[b][c] += obs[b].intensity[c];
      sum_e_[b] += obs[b].energy;
    }
    if (static_cast<int>(history_.size()) > kDiffusenessWindowSlots) {
      const auto& old = history_.front();
      for (std::size_t b = 0; b < old.size(); ++b) {
        for (int c = 0; c < 3; ++c) sum_i_[b][c] -= old[b].intensity[c];
        sum_e_[b] -= old[b].energy;
      }
      history_.pop_front();
    }
  }

  /// Diffuseness of one band from the current window:
  /// 1 - ||sum I|| / sum E, clamped to [0, 1]; 1 when the window is silent.
  double diffuseness(int b) const {
    const double e = sum_e_[static_cast<std::size_t>(b)];
    if (e <= kEnergyFloor) return 1.0;
    const double ni = norm(sum_i_[static_cast<std::size_t>(b)]);
    return std::clamp(1.0 - ni / e, 0.0, 1.0);
  }

  std::vector<double> diffuseness_all() const {
    std::vector<double> out(sum_e_.size());
    for (std::size_t b = 0; b < sum_e_.size(); ++b)
      out[b] = diffuseness(static_cast<int>(b));
    return out;
  }

  /// DOA estimate for one band from an observation. Degenerate observations
  /// (near-zero energy or intensity) return the previously estimated DOA,
  /// (0, 0) at stream start.
  Direction estimate_doa(int b, const BandObservation& obs) {
    return estimate_doa_vec(b, obs.intensity, obs.energy);
  }

  /// Same hold rule on an externally accumulated intensity (subframe sums).
  Direction estimate_doa_vec(int b, const Vec3& intensity, double energy) {
    const double ni = norm(intensity);
    if (energy <= kEnergyFloor || ni <= kDoaHoldRelative * energy)
      return last_doa_[static_cast<std::size_t>(b)];
    const Direction d = direction_from_intensity(intensity);
    last_doa_[static_cast<std::size_t>(b)] = d;
    return d;
  }

 private:
  BandGrouping bands_;
  std::deque<std::vector<BandObservation>> history_;
  std::vector<Vec3> sum_i_;
  std::vector<double> sum_e_;
  std::vector<Direction> last_doa_;
};

}  // namespace adrc

#endif  // ADRC_DIRAC_HPP
