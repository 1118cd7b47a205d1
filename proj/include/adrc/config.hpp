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

#ifndef ADRC_CONFIG_HPP
#define ADRC_CONFIG_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "adrc/ambisonic.hpp"
#include "adrc/bands.hpp"
#include "adrc/common.hpp"

namespace adrc {

enum class TransportMode : int { ScalarQ = 0, PassThrough = 1 };

inline constexpr int kFramesPerSecond = 50;  // 20 ms frames
inline constexpr int kOutputOrder = 3;

/// Supported total bitrates (bps).
inline const std::vector<int>& supported_bitrates() {
  static const std::vector<int> rates{32000, 48000, 64000, 96000, 128000};
  return rates;
}

/// Transport-channel count for a bitrate: 1 TC up to 32 kbps, 2 TCs up to
/// the 96 kbps row boundary, 4 TCs from 96 kbps up.
inline TcMode tc_mode_for_bitrate(int bitrate) {
  if (bitrate <= 32000) return TcMode::Mono1;
  if (bitrate < 96000) return TcMode::Stereo2;
  return TcMode::Foa4;
}

/// Maximum parameter payload per 20 ms frame, in bits. Row caps: 3.5-8.5
/// kbps for 1 TC over 13.2-32 kbps, 6-10 kbps for 2 TCs over 48-96 kbps and
/// a flat 4.8 kbps for 4 TCs, linearly interpolated within the row and
/// rounded to whole bits.
inline int param_cap_bits(int bitrate, TcMode mode) {
  auto interp = [bitrate](double lo_rate, double hi_rate, double lo_kbps,
                          double hi_kbps) {
    const double t =
        std::clamp((bitrate - lo_rate) / (hi_rate - lo_rate), 0.0, 1.0);
    const double kbps = lo_kbps + t * (hi_kbps - lo_kbps);
    return static_cast<int>(std::lround(kbps * 1000.0 / kFramesPerSecond));
  };
  switch (mode) {
    case TcMode::Mono1: return interp(13200, 32000, 3.5, 8.5);
    case TcMode::Stereo2: return interp(48000, 96000, 6.0, 10.0);
    case TcMode::Foa4: return static_cast<int>(std::lround(4800.0 / kFramesPerSecond));
  }
  throw ConfigError("bad tc mode");
}

/// Full codec configuration, fixed for the lifetime of a stream.
struct CodecConfig {
  int sample_rate = 48000;
  int bitrate = 64000;
  TcMode tc = TcMode::Stereo2;
  TransportMode transport = TransportMode::ScalarQ;
  int input_order = 3;
  int num_bands = 5;
  int cap_bits = 0;       // parameter payload cap per frame
  int diffuse_order = 1;  // L

  int frame_samples() const { return sample_rate / kFramesPerSecond; }

  BandGrouping bands() const { return make_bands(sample_rate, num_bands); }

  /// First coded band: 4-TC modes transmit only the bands at or above the
  /// 8 kHz cutoff; the decoder re-analyzes the low bands itself.
  int first_coded_band() const {
    return tc == TcMode::Foa4 ? first_high_band(bands()) : 0;
  }

  int num_coded_bands() const { return num_bands - first_coded_band(); }

  /// Exact frame size. ScalarQ fits the nominal CBR budget; PassThrough
  /// stores raw 32-bit floats after the parameter payload (research mode,
  /// still constant-size but larger than the nominal bitrate).
  int frame_bytes() const {
    if (transport == TransportMode::ScalarQ) {
      const int bits = bitrate / kFramesPerSecond;
      return (bits + 7) / 8;
    }
    const int bits = cap_bits + 32 * tc_count(tc) * frame_samples();
    return (bits + 7) / 8;
  }

  int frame_bits() const { return frame_bytes() * 8; }
};

inline CodecConfig make_config(int bitrate, int sample_rate, int input_order,
                               TransportMode transport = TransportMode::ScalarQ,
                               int tc_override = 0) {
  if (!supported_sample_rate(sample_rate))
    throw ConfigError("unsupported sample rate " + std::to_string(sample_rate));
  const auto& rates = supported_bitrates();
  if (std::find(rates.begin(), rates.end(), bitrate) == rates.end())
    throw ConfigError("unsupported bitrate " + std::to_string(bitrate));
  if (input_order < 1 || input_order > kMaxShOrder)
    throw ConfigError("input order must be 1..3 (got " +
                      std::to_string(input_order) + ")");
  CodecConfig c;
  c.sample_rate = sample_rate;
  c.bitrate = bitrate;
  c.transport = transport;
  c.input_order = input_order;
  c.tc = tc_mode_for_bitrate(bitrate);
  if (tc_override == 1 || tc_override == 2 || tc_override == 4)
    c.tc = static_cast<TcMode>(tc_override);
  else if (tc_override != 0)
    throw ConfigError("tc override must be 1, 2 or 4");
  c.num_bands = (c.tc == TcMode::Foa4) ? 6 : 5;
  c.cap_bits = param_cap_bits(bitrate, c.tc);
  c.diffuse_order = (c.tc == TcMode::Foa4) ? 2 : 1;
  // CBR frame must hold at least the parameter cap
  if (c.transport == TransportMode::ScalarQ &&
      c.frame_bits() <= c.cap_bits)
    throw ConfigError("bitrate too small for parameter payload");
  return c;
}

}  // namespace adrc

#endif  // ADRC_CONFIG_HPP
