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

#ifndef ADRC_PARAM_CODER_HPP
#define ADRC_PARAM_CODER_HPP

#include <array>
#include <vector>

#include "adrc/bits.hpp"
#include "adrc/common.hpp"
#include "adrc/config.hpp"
#include "adrc/dirac.hpp"
#include "adrc/param_quant.hpp"

namespace adrc {

/// Raw (unquantized) parameters of one 20 ms frame: a frame-level
/// diffuseness per band and one DOA per 5 ms subframe per band.
struct FrameParams {
  std::vector<double> diffuseness;                 // [band]
  std::vector<std::array<Direction, 4>> doa;       // [band][subframe]

  int num_bands() const { return static_cast<int>(diffuseness.size()); }
};

/// Temporal downsampling of slot-rate estimates to the coded granularity:
/// diffuseness is averaged (energy-weighted) over the frame's 16 slots, the
/// DOA is the direction of the summed intensity over each subframe's 4
/// slots. Keeps a per-band DOA hold for silent subframes.
class ParamDownsampler {
 public:
  explicit ParamDownsampler(int num_bands)
      : last_doa_(static_cast<std::size_t>(num_bands)) {}

  void reset() {
    std::fill(last_doa_.begin(), last_doa_.end(), Direction{});
  }

  /// `slot_obs` holds one entry per slot (16); `slot_psi` one diffuseness
  /// value per slot per band, both indexed [slot][band].
  FrameParams downsample(const std::vector<std::vector<BandObservation>>& slot_obs,
                         const std::vector<std::vector<double>>& slot_psi) {
    if (slot_obs.size() != kSlotsPerFrame || slot_psi.size() != slot_obs.size())
      throw ConfigError("downsampling expects one 16-slot frame");
    const int nb = static_cast<int>(last_doa_.size());
    FrameParams out;
    out.diffuseness.assign(static_cast<std::size_t>(nb), 1.0);
    out.doa.resize(static_cast<std::size_t>(nb));
    for (int b = 0; b < nb; ++b) {
      double esum = 0.0, psum = 0.0, punw = 0.0;
      for (std::size_t s = 0; s < slot_obs.size(); ++s) {
        const double e = slot_obs[s][static_cast<std::size_t>(b)].energy;
        esum += e;
        psum += e * slot_psi[s][static_cast<std::size_t>(b)];
        punw += slot_psi[s][static_cast<std::size_t>(b)];
      }
      out.diffuseness[static_cast<std::size_t>(b)] =
          esum > kEnergyFloor ? psum / esum
                              : punw / static_cast<double>(slot_obs.size());
      for (int sf = 0; sf < kSubframesPerFrame; ++sf) {
        Vec3 isum{0, 0, 0};
        double e = 0.0;
        for (int j = 0; j < kSlotsPerSubframe; ++j) {
          const auto& o =
              slot_obs[static_cast<std::size_t>(sf * kSlotsPerSubframe + j)]
                      [static_cast<std::size_t>(b)];
          for (int c = 0; c < 3; ++c) isum[c] += o.intensity[c];
          e += o.energy;
        }
        const double ni = norm(isum);
        Direction d;
        if (e <= kEnergyFloor || ni <= kDoaHoldRelative * e) {
          d = last_doa_[static_cast<std::size_t>(b)];
        } else {
          d = direction_from_intensity(isum);
          last_doa_[static_cast<std::size_t>(b)] = d;
        }
        out.doa[static_cast<std::size_t>(b)][static_cast<std::size_t>(sf)] = d;
      }
    }
    return out;
  }

 private:
  std::vector<Direction> last_doa_;
};

/// Quantized parameters of one frame for the coded band set.
struct QuantizedParamFrame {
  std::vector<int> diff_index;                  // [coded band], 3 bits each
  std::vector<int> doa_bits;                    // [coded band], after capping
  std::vector<std::array<int, 4>> doa_index;    // [coded band][subframe]
  int payload_bits = 0;
};

inline int params_payload_bits(const std::vector<int>& bits_per_band) {
  int total = 3 * static_cast<int>(bits_per_band.size());
  for (int b : bits_per_band) total += 4 * b;
  return total;
}

/// DOA bit allocation under the frame cap. Starts from the per-band table
/// widths and, while over budget, lowers one band by one bit at a time
/// starting from the highest-frequency band. Deterministic, so the decoder
/// mirrors it from the diffuseness indices alone.
inline std::vector<int> allocate_doa_bits(const std::vector<int>& diff_index,
                                          int cap_bits) {
  std::vector<int> bits(diff_index.size());
  for (std::size_t b = 0; b < diff_index.size(); ++b)
    bits[b] = doa_bits(diff_index[b]);
  while (params_payload_bits(bits) > cap_bits) {
    bool reduced = false;
    for (int b = static_cast<int>(bits.size()) - 1; b >= 0; --b) {
      if (bits[static_cast<std::size_t>(b)] > kMinDoaBits) {
        --bits[static_cast<std::size_t>(b)];
        reduced = true;
        if (params_payload_bits(bits) <= cap_bits) break;
      }
    }
    if (!reduced) break;  // everything at minimum width already
  }
  return bits;
}

/// Quantizes the coded bands of a frame under the mode's bit cap.
inline QuantizedParamFrame encode_frame_params(const FrameParams& params,
                                               const CodecConfig& cfg) {
  if (params.num_bands() != cfg.num_bands)
    throw ConfigError("band count mismatch");
  const int b0 = cfg.first_coded_band();
  QuantizedParamFrame q;
  for (int b = b0; b < cfg.num_bands; ++b)
    q.diff_index.push_back(
        quantize_diffuseness(params.diffuseness[static_cast<std::size_t>(b)]));
  q.doa_bits = allocate_doa_bits(q.diff_index, cfg.cap_bits);
  q.doa_index.resize(q.diff_index.size());
  for (std::size_t i = 0; i < q.diff_index.size(); ++i) {
    const auto& grid = SphericalGrid::get(q.doa_bits[i]);
    for (int sf = 0; sf < kSubframesPerFrame; ++sf)
      q.doa_index[i][static_cast<std::size_t>(sf)] = grid.quantize(
          params.doa[static_cast<std::size_t>(b0) + i][static_cast<std::size_t>(sf)]);
  }
  q.payload_bits = params_payload_bits(q.doa_bits);
  return q;
}

inline void write_frame_params(BitWriter& w, const QuantizedParamFrame& q) {
  for (int idx : q.diff_index) w.put(static_cast<std::uint64_t>(idx), 3);
  for (std::size_t b = 0; b < q.doa_index.size(); ++b)
    for (int sf = 0; sf < kSubframesPerFrame; ++sf)
      w.put(static_cast<std::uint64_t>(q.doa_index[b][static_cast<std::size_t>(sf)]),
            q.doa_bits[b]);
}

/// Parses the coded-band payload; the widths are recomputed from the
/// diffuseness indices, so no length field is needed. Throws on DOA indices
/// outside the grid.
inline QuantizedParamFrame read_frame_params(BitReader& r, const CodecConfig& cfg) {
  QuantizedParamFrame q;
  const int nb = cfg.num_coded_bands();
  q.diff_index.resize(static_cast<std::size_t>(nb));
  for (int b = 0; b < nb; ++b)
    q.diff_index[static_cast<std::size_t>(b)] = static_cast<int>(r.get(3));
  q.doa_bits = allocate_doa_bits(q.diff_index, cfg.cap_bits);
  q.doa_index.resize(static_cast<std::size_t>(nb));
  for (int b = 0; b < nb; ++b) {
    const auto& grid = SphericalGrid::get(q.doa_bits[static_cast<std::size_t>(b)]);
    for (int sf = 0; sf < kSubframesPerFrame; ++sf) {
      const int idx = static_cast<int>(r.get(q.doa_bits[static_cast<std::size_t>(b)]));
      if (idx >= grid.size()) throw Error("DOA index out of grid range");
      q.doa_index[static_cast<std::size_t>(b)][static_cast<std::size_t>(sf)] = idx;
    }
  }
  q.payload_bits = params_payload_bits(q.doa_bits);
  return q;
}

/// Dequantized parameters for the coded bands.
struct DecodedBandParams {
  double diffuseness = 1.0;
  std::array<Direction, 4> doa{};
};

inline std::vector<DecodedBandParams> dequantize_frame_params(
    const QuantizedParamFrame& q) {
  std::vector<DecodedBandParams> out(q.diff_index.size());
  for (std::size_t b = 0; b < q.diff_index.size(); ++b) {
    out[b].diffuseness = dequantize_diffuseness(q.diff_index[b]);
    const auto& grid = SphericalGrid::get(q.doa_bits[b]);
    for (int sf = 0; sf < kSubframesPerFrame; ++sf)
      out[b].doa[static_cast<std::size_t>(sf)] =
          grid.dequantize(q.doa_index[b][static_cast<std::size_t>(sf)]);
  }
  return out;
}

}  // namespace adrc

#endif  // ADRC_PARAM_CODER_HPP
