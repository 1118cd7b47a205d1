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

#ifndef ADRC_SYNTHESIS_HPP
#define ADRC_SYNTHESIS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "adrc/ambisonic.hpp"
#include "adrc/bands.hpp"
#include "adrc/common.hpp"
#include "adrc/config.hpp"
#include "adrc/dirac.hpp"
#include "adrc/param_coder.hpp"
#include "adrc/sh.hpp"

namespace adrc {

/// Energy preservation gain compensating the order-L truncation of the
/// diffuse stream:
///   g = sqrt(1 - psi * ((H+1)/(L+1) - 1)),
/// clamped at 0 when the radicand goes negative (possible for psi -> 1 with
/// L < H; `clamped`, when given, counts those events).
inline double energy_compensation(double psi, int order_h, int order_l,
                                  long* clamped = nullptr) {
  const double r =
      1.0 - psi * ((order_h + 1.0) / (order_l + 1.0) - 1.0);
  if (r < 0.0) {
    if (clamped) ++*clamped;
    return 0.0;
  }
  return std::sqrt(r);
}

struct ChannelGains {
  double dir = 0.0;
  double diff = 0.0;
};

/// Directional and diffuse gains of one output channel (order l) for decoded
/// diffuseness and DOA:
///   g_dir  = sqrt(1 - psi) * Y_l^m(doa)
///   g_diff = sqrt(psi / (2l + 1))        (SN3D diffuse-field level)
inline ChannelGains compute_gains(double psi, const Direction& doa, int l, int m) {
  if (l > kMaxShOrder) throw ConfigError("order above 3");
  const ShVector sh = sh_eval(doa, l);
  ChannelGains g;
  g.dir = std::sqrt(std::max(0.0, 1.0 - psi)) *
          sh.values[static_cast<std::size_t>(acn_index(l, m))];
  g.diff = std::sqrt(std::max(0.0, psi) / (2.0 * l + 1.0));
  return g;
}

/// Synthesis-side configuration derived from the codec mode.
struct SynthesisConfig {
  int order_out = kOutputOrder;  // H
  int diffuse_order = 1;         // L
  std::vector<int> direct_channels;
  int cutoff_bin = kCutoffBin;
  bool smooth_gains = true;

  static SynthesisConfig from_codec(const CodecConfig& c) {
    SynthesisConfig s;
    s.diffuse_order = c.diffuse_order;
    s.direct_channels = direct_channel_set(c.tc);
    return s;
  }
};

/// Per-band decoded parameters at frame granularity used by the synthesizer.
struct SynthesisBandParams {
  double diffuseness = 1.0;
  std::array<Direction, 4> doa{};
};

/// Rebuilds HOA3 tiles from decoded transport tiles via the three-group
/// model: directly transmitted channels are scaled by the energy gain g;
/// channels up to the diffuse order L below the cutoff mix a panned omni and
/// a decorrelated omni; everything else is panned omni only. Above the
/// cutoff the diffuse term stays phase-coherent (no decorrelator). Gains are
/// interpolated linearly across each subframe's slots to avoid zipper noise.
class HoaSynthesizer {
 public:
  HoaSynthesizer(const SynthesisConfig& cfg, const BandGrouping& bands)
      : cfg_(cfg),
        bands_(bands),
        prev_(static_cast<std::size_t>(bands.num_bands()),
              std::vector<SlotGains>(
                  static_cast<std::size_t>(num_channels(cfg.order_out)))),
        have_prev_(false) {
    is_direct_.assign(static_cast<std::size_t>(num_channels(cfg_.order_out)), false);
    for (int c : cfg_.direct_channels)
      is_direct_[static_cast<std::size_t>(c)] = true;
    // decorrelator slot index per non-direct channel with l <= L
    diffuse_slot_.assign(is_direct_.size(), -1);
    int d = 0;
    for (int ch = 0; ch < num_channels(cfg_.diffuse_order); ++ch)
      if (!is_direct_[static_cast<std::size_t>(ch)])
        diffuse_slot_[static_cast<std::size_t>(ch)] = d++;
    num_diffuse_ = d;
  }

  int num_diffuse_channels() const { return num_diffuse_; }
  long clamp_events() const { return clamp_events_; }

  void reset() {
    have_prev_ = false;
    clamp_events_ = 0;
  }

  /// Synthesizes one frame.
  ///   tc_tf:    tiles of the recovered FOA subset (one per direct channel)
  ///   diff_tf:  tiles of the decorrelated omni, one per diffuse channel
  ///   params:   per band, frame-level diffuseness + 4 subframe DOAs
  TfFrame synthesize(const TfFrame& tc_tf, const std::vector<TfFrame>& diff_tf,
                     const std::vector<SynthesisBandParams>& params) {
    const int nch = num_channels(cfg_.order_out);
    const int nb = bands_.num_bands();
    if (static_cast<int>(params.size()) != nb)
      throw ConfigError("band/param count mismatch");
    if (tc_tf.slots.empty() ||
        tc_tf.slots[0].ch.size() != cfg_.direct_channels.size())
      throw ConfigError("transport tile count mismatch");
    const int bins = static_cast<int>(tc_tf.slots[0].ch[0].size());

    TfFrame out;
    out.slots.resize(tc_tf.slots.size());

    // target gains per subframe, then per-slot interpolation
    for (std::size_t slot = 0; slot < tc_tf.slots.size(); ++slot) {
      const int sf = static_cast<int>(slot) / kSlotsPerSubframe;
      const int j = static_cast<int>(slot) % kSlotsPerSubframe;
      out.slots[slot].ch.assign(static_cast<std::size_t>(nch),
                                Spectrum(static_cast<std::size_t>(bins)));
      for (int b = 0; b < nb; ++b) {
        const auto target = band_gains(params[static_cast<std::size_t>(b)], sf, b);
        for (int ch = 0; ch < nch; ++ch) {
          SlotGains g = target[static_cast<std::size_t>(ch)];
          if (cfg_.smooth_gains) {
            const SlotGains& p = prev_[static_cast<std::size_t>(b)]
                                      [static_cast<std::size_t>(ch)];
            const double t = (j + 1) / static_cast<double>(kSlotsPerSubframe);
            if (have_prev_) {
              g.direct = p.direct + (g.direct - p.direct) * t;
              g.omni = p.omni + (g.omni - p.omni) * t;
              g.decorr = p.decorr + (g.decorr - p.decorr) * t;
            }
          }
          apply(out.slots[slot], tc_tf.slots[slot], diff_tf, slot, b, ch, g);
        }
        if (j == kSlotsPerSubframe - 1)
          prev_[static_cast<std::size_t>(b)] = target;
      }
      if (slot % kSlotsPerSubframe == kSlotsPerSubframe - 1) have_prev_ = true;
    }
    return out;
  }

 private:
  struct SlotGains {
    double direct = 0.0;  // applied to the channel's own transported tile
    double omni = 0.0;    // applied to the transported W tile
    double decorr = 0.0;  // applied to the decorrelated W tile
  };

  std::vector<SlotGains> band_gains(const SynthesisBandParams& p, int sf, int b) {
    const int nch = num_channels(cfg_.order_out);
    std::vector<SlotGains> out(static_cast<std::size_t>(nch));
    const double psi = p.diffuseness;
    const Direction doa = p.doa[static_cast<std::size_t>(sf)];
    const double g = energy_compensation(psi, cfg_.order_out, cfg_.diffuse_order,
                                         &clamp_events_);
    const ShVector sh = sh_eval(doa, cfg_.order_out);
    const double dir_fac = std::sqrt(std::max(0.0, 1.0 - psi));
    const bool high_band = bands_.begin(b) >= cfg_.cutoff_bin;
    for (int ch = 0; ch < nch; ++ch) {
      SlotGains& sg = out[static_cast<std::size_t>(ch)];
      const int l = acn_order(ch);
      const double g_dir = dir_fac * sh.values[static_cast<std::size_t>(ch)];
      if (is_direct_[static_cast<std::size_t>(ch)]) {
        sg.direct = g;
      } else if (l <= cfg_.diffuse_order) {
        const double g_diff = std::sqrt(std::max(0.0, psi) / (2.0 * l + 1.0));
        if (high_band) {
          sg.omni = g * (g_dir + g_diff);  // phase-coherent diffuse
        } else {
          sg.omni = g * g_dir;
          sg.decorr = g * g_diff;
        }
      } else {
        sg.omni = g_dir;
      }
    }
    return out;
  }

  void apply(TfSlot& out, const TfSlot& tc, const std::vector<TfFrame>& diff_tf,
             std::size_t slot, int b, int ch, const SlotGains& g) {
    Spectrum& dst = out.ch[static_cast<std::size_t>(ch)];
    const int k0 = bands_.begin(b);
    const int k1 = bands_.end(b);
    if (g.direct != 0.0) {
      // position of ch within the direct set == its ACN index order
      int tc_idx = 0;
      for (std::size_t i = 0; i < cfg_.direct_channels.size(); ++i)
        if (cfg_.direct_channels[i] == ch) tc_idx = static_cast<int>(i);
      const Spectrum& src = tc.ch[static_cast<std::size_t>(tc_idx)];
      const float gf = static_cast<float>(g.direct);
      for (int k = k0; k < k1; ++k) dst[static_cast<std::size_t>(k)] += gf * src[static_cast<std::size_t>(k)];
    }
    if (g.omni != 0.0) {
      const Spectrum& src = tc.ch[0];
      const float gf = static_cast<float>(g.omni);
      for (int k = k0; k < k1; ++k) dst[static_cast<std::size_t>(k)] += gf * src[static_cast<std::size_t>(k)];
    }
    if (g.decorr != 0.0) {
      const int d = diffuse_slot_[static_cast<std::size_t>(ch)];
      if (d >= 0 && d < static_cast<int>(diff_tf.size())) {
        const Spectrum& src = diff_tf[static_cast<std::size_t>(d)].slots[slot].ch[0];
        const float gf = static_cast<float>(g.decorr);
        for (int k = k0; k < k1; ++k) dst[static_cast<std::size_t>(k)] += gf * src[static_cast<std::size_t>(k)];
      }
    }
  }

  SynthesisConfig cfg_;
  BandGrouping bands_;
  std::vector<bool> is_direct_;
  std::vector<int> diffuse_slot_;
  int num_diffuse_ = 0;
  std::vector<std::vector<SlotGains>> prev_;  // [band][channel]
  bool have_prev_ = false;
  long clamp_events_ = 0;
};

}  // namespace adrc

#endif  // ADRC_SYNTHESIS_HPP
