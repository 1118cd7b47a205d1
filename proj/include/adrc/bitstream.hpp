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

#ifndef ADRC_BITSTREAM_HPP
#define ADRC_BITSTREAM_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "adrc/common.hpp"
#include "adrc/config.hpp"

namespace adrc {

// On-disk container. A 14-byte header followed by fixed-size frames; the
// exact bit layout is documented in docs/bitstream.md. All multi-byte fields
// are big-endian; frames are byte-aligned with zero padding.

inline constexpr std::array<std::uint8_t, 4> kMagic{'A', 'D', 'R', 'C'};
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kHeaderBytes = 14;

struct StreamHeader {
  int sample_rate = 48000;
  int bitrate = 64000;
  TcMode tc = TcMode::Stereo2;
  TransportMode transport = TransportMode::ScalarQ;
  int input_order = 3;
  int num_bands = 5;
};

inline StreamHeader header_from_config(const CodecConfig& c) {
  StreamHeader h;
  h.sample_rate = c.sample_rate;
  h.bitrate = c.bitrate;
  h.tc = c.tc;
  h.transport = c.transport;
  h.input_order = c.input_order;
  h.num_bands = c.num_bands;
  return h;
}

inline CodecConfig config_from_header(const StreamHeader& h) {
  CodecConfig c = make_config(h.bitrate, h.sample_rate, h.input_order,
                              h.transport, tc_count(h.tc));
  if (c.num_bands != h.num_bands)
    throw FormatError("band count inconsistent with transport-channel mode");
  return c;
}

inline void write_header(std::vector<std::uint8_t>& out, const StreamHeader& h) {
  out.insert(out.end(), kMagic.begin(), kMagic.end());
  out.push_back(kVersion);
  out.push_back(h.sample_rate == 32000 ? 0 : 1);
  const std::uint32_t br = static_cast<std::uint32_t>(h.bitrate);
  out.push_back(static_cast<std::uint8_t>(br >> 24));
  out.push_back(static_cast<std::uint8_t>(br >> 16));
  out.push_back(static_cast<std::uint8_t>(br >> 8));
  out.push_back(static_cast<std::uint8_t>(br));
  out.push_back(static_cast<std::uint8_t>(tc_count(h.tc)));
  out.push_back(static_cast<std::uint8_t>(h.input_order));
  out.push_back(static_cast<std::uint8_t>(h.num_bands));
  out.push_back(static_cast<std::uint8_t>(h.transport));
}

inline StreamHeader parse_header(const std::uint8_t* data, std::size_t size) {
  if (size < kHeaderBytes) throw FormatError("stream too short for header");
  for (std::size_t i = 0; i < 4; ++i)
    if (data[i] != kMagic[i]) throw FormatError("bad magic");
  if (data[4] != kVersion)
    throw FormatError("unsupported version " + std::to_string(data[4]));
  StreamHeader h;
  if (data[5] == 0)
    h.sample_rate = 32000;
  else if (data[5] == 1)
    h.sample_rate = 48000;
  else
    throw FormatError("bad sample-rate code");
  h.bitrate = static_cast<int>((static_cast<std::uint32_t>(data[6]) << 24) |
                               (static_cast<std::uint32_t>(data[7]) << 16) |
                               (static_cast<std::uint32_t>(data[8]) << 8) |
                               static_cast<std::uint32_t>(data[9]));
  const int tcs = data[10];
  if (tcs != 1 && tcs != 2 && tcs != 4) throw FormatError("bad TC count");
  h.tc = static_cast<TcMode>(tcs);
  h.input_order = data[11];
  if (h.input_order < 1 || h.input_order > 3) throw FormatError("bad input order");
  h.num_bands = data[12];
  if (data[13] > 1) throw FormatError("bad transport code");
  h.transport = static_cast<TransportMode>(data[13]);
  return h;
}

/// Serializes a header and CBR frames into one byte stream. Every frame must
/// already have the exact frame size for the configuration.
inline std::vector<std::uint8_t> mux(const StreamHeader& h,
                                     const std::vector<std::vector<std::uint8_t>>& frames) {
  const CodecConfig cfg = config_from_header(h);
  const std::size_t fb = static_cast<std::size_t>(cfg.frame_bytes());
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + frames.size() * fb);
  write_header(out, h);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].size() != fb)
      throw FrameError(i, "frame size " + std::to_string(frames[i].size()) +
                              " != " + std::to_string(fb));
    out.insert(out.end(), frames[i].begin(), frames[i].end());
  }
  return out;
}

struct DemuxResult {
  StreamHeader header;
  std::vector<std::vector<std::uint8_t>> frames;
};

/// Splits a byte stream into header and frames. Throws FormatError for a bad
/// header and FrameError (with the index of the offending frame) when the
/// stream ends mid-frame.
inline DemuxResult demux(const std::uint8_t* data, std::size_t size) {
  DemuxResult res;
  res.header = parse_header(data, size);
  const CodecConfig cfg = config_from_header(res.header);
  const std::size_t fb = static_cast<std::size_t>(cfg.frame_bytes());
  std::size_t pos = kHeaderBytes;
  while (pos < size) {
    if (size - pos < fb)
      throw FrameError(res.frames.size(), "truncated frame");
    res.frames.emplace_back(data + pos, data + pos + fb);
    pos += fb;
  }
  return res;
}

inline DemuxResult demux(const std::vector<std::uint8_t>& bytes) {
  return demux(bytes.data(), bytes.size());
}

}  // namespace adrc

#endif  // ADRC_BITSTREAM_HPP
