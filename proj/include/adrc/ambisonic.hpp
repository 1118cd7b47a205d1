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

#ifndef ADRC_AMBISONIC_HPP
#define ADRC_AMBISONIC_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "adrc/common.hpp"
#include "adrc/sh.hpp"

namespace adrc {

/// A block of time-domain samples for (order+1)^2 channels in ACN order with
/// SN3D normalization (AmbiX layout).
struct AmbisonicFrame {
  int order = 0;
  int sample_rate = 48000;
  std::vector<std::vector<float>> channels;

  std::size_t num_samples() const {
    return channels.empty() ? 0 : channels[0].size();
  }
};

inline AmbisonicFrame make_ambisonic_frame(int order, int sample_rate,
                                           std::size_t samples) {
  if (order < 0 || order > kMaxShOrder)
    throw ConfigError("unsupported ambisonic order " + std::to_string(order));
  AmbisonicFrame f;
  f.order = order;
  f.sample_rate = sample_rate;
  f.channels.assign(static_cast<std::size_t>(num_channels(order)),
                    std::vector<float>(samples, 0.0f));
  return f;
}

/// Encodes a mono signal arriving from `dir` into an ambisonic frame:
/// channel i carries sh_eval(dir, order)[i] * mono.
inline AmbisonicFrame pan_source(std::span<const float> mono, const Direction& dir,
                                 int order, int sample_rate) {
  AmbisonicFrame out = make_ambisonic_frame(order, sample_rate, mono.size());
  const ShVector sh = sh_eval(dir, order);
  for (std::size_t c = 0; c < out.channels.size(); ++c) {
    const float g = static_cast<float>(sh.values[c]);
    for (std::size_t i = 0; i < mono.size(); ++i)
      out.channels[c][i] = g * mono[i];
  }
  return out;
}

/// Adds a panned mono source into an existing frame (scene building).
inline void pan_source_into(AmbisonicFrame& acc, std::span<const float> mono,
                            const Direction& dir, float gain) {
  const ShVector sh = sh_eval(dir, acc.order);
  const std::size_t n = std::min(acc.num_samples(), mono.size());
  for (std::size_t c = 0; c < acc.channels.size(); ++c) {
    const float g = gain * static_cast<float>(sh.values[c]);
    for (std::size_t i = 0; i < n; ++i) acc.channels[c][i] += g * mono[i];
  }
}

/// Transport-channel selection. The value is the channel count.
enum class TcMode : int { Mono1 = 1, Stereo2 = 2, Foa4 = 4 };

inline int tc_count(TcMode m) { return static_cast<int>(m); }

/// Downmixes (at least first-order) ambisonics to transport channels:
///   Mono1   -> [W]
///   Stereo2 -> [(W+Y)/2, (W-Y)/2]   (left/right cardioids)
///   Foa4    -> [W, Y, Z, X]
/// Higher input orders are truncated to FOA first.
inline std::vector<std::vector<float>> downmix(const AmbisonicFrame& in, TcMode mode) {
  if (in.order < 1) throw ConfigError("downmix requires order >= 1 input");
  const std::size_t n = in.num_samples();
  const auto& w = in.channels[0];
  const auto& y = in.channels[1];
  std::vector<std::vector<float>> tc;
  switch (mode) {
    case TcMode::Mono1:
      tc.push_back(w);
      break;
    case TcMode::Stereo2: {
      tc.assign(2, std::vector<float>(n));
      for (std::size_t i = 0; i < n; ++i) {
        tc[0][i] = 0.5f * (w[i] + y[i]);
        tc[1][i] = 0.5f * (w[i] - y[i]);
      }
      break;
    }
    case TcMode::Foa4:
      tc.assign(in.channels.begin(), in.channels.begin() + 4);
      break;
  }
  return tc;
}

/// Recovers the directly-transmitted FOA channels from transport channels.
/// Returns as many ACN-ordered channels as the mode conveys:
/// 1 for Mono1 (W), 2 for Stereo2 (W, Y), 4 for Foa4.
inline std::vector<std::vector<float>> recover_foa(
    const std::vector<std::vector<float>>& tc, TcMode mode) {
  switch (mode) {
    case TcMode::Mono1:
      return {tc.at(0)};
    case TcMode::Stereo2: {
      const auto& l = tc.at(0);
      const auto& r = tc.at(1);
      std::vector<std::vector<float>> foa(2, std::vector<float>(l.size()));
      for (std::size_t i = 0; i < l.size(); ++i) {
        foa[0][i] = l[i] + r[i];  // W
        foa[1][i] = l[i] - r[i];  // Y
      }
      return foa;
    }
    case TcMode::Foa4:
      return {tc.begin(), tc.begin() + 4};
  }
  throw ConfigError("bad tc mode");
}

/// ACN indices recovered directly from the transport channels per mode.
inline std::vector<int> direct_channel_set(TcMode mode) {
  switch (mode) {
    case TcMode::Mono1: return {0};
    case TcMode::Stereo2: return {0, 1};
    case TcMode::Foa4: return {0, 1, 2, 3};
  }
  throw ConfigError("bad tc mode");
}

}  // namespace adrc

#endif  // ADRC_AMBISONIC_HPP
