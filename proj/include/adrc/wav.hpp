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

#ifndef ADRC_WAV_HPP
#define ADRC_WAV_HPP

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "adrc/common.hpp"

namespace adrc {

// Minimal RIFF/WAVE I/O, 32-bit float only (AmbiX files are float WAV).

struct WavData {
  int sample_rate = 48000;
  std::vector<std::vector<float>> channels;  // planar

  std::size_t num_samples() const {
    return channels.empty() ? 0 : channels[0].size();
  }
};

namespace detail {

inline std::uint32_t rd_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}
inline std::uint16_t rd_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
inline void wr_u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
  v.push_back(static_cast<std::uint8_t>(x));
  v.push_back(static_cast<std::uint8_t>(x >> 8));
  v.push_back(static_cast<std::uint8_t>(x >> 16));
  v.push_back(static_cast<std::uint8_t>(x >> 24));
}
inline void wr_u16(std::vector<std::uint8_t>& v, std::uint16_t x) {
  v.push_back(static_cast<std::uint8_t>(x));
  v.push_back(static_cast<std::uint8_t>(x >> 8));
}

}  // namespace detail

inline WavData parse_wav(const std::uint8_t* data, std::size_t size) {
  using namespace detail;
  if (size < 12 || std::memcmp(data, "RIFF", 4) != 0 ||
      std::memcmp(data + 8, "WAVE", 4) != 0)
    throw FormatError("not a RIFF/WAVE file");
  std::size_t pos = 12;
  int channels = 0, rate = 0, bits = 0, fmt = 0;
  const std::uint8_t* payload = nullptr;
  std::size_t payload_size = 0;
  while (pos + 8 <= size) {
    const std::uint32_t chunk_size = rd_u32(data + pos + 4);
    const std::uint8_t* body = data + pos + 8;
    if (pos + 8 + chunk_size > size) throw FormatError("truncated WAV chunk");
    if (std::memcmp(data + pos, "fmt ", 4) == 0) {
      if (chunk_size < 16) throw FormatError("bad fmt chunk");
      fmt = rd_u16(body);
      channels = rd_u16(body + 2);
      rate = static_cast<int>(rd_u32(body + 4));
      bits = rd_u16(body + 14);
      if (fmt == 0xFFFE && chunk_size >= 40)
        fmt = rd_u16(body + 24);  // extensible: subformat GUID starts with the code
    } else if (std::memcmp(data + pos, "data", 4) == 0) {
      payload = body;
      payload_size = chunk_size;
    }
    pos += 8 + chunk_size + (chunk_size & 1);
  }
  if (channels <= 0 || payload == nullptr) throw FormatError("missing WAV chunks");
  if (fmt != 3 || bits != 32)
    throw FormatError("only 32-bit float WAV is supported");
  WavData w;
  w.sample_rate = rate;
  const std::size_t frames = payload_size / (static_cast<std::size_t>(channels) * 4);
  w.channels.assign(static_cast<std::size_t>(channels), std::vector<float>(frames));
  for (std::size_t i = 0; i < frames; ++i) {
    for (int c = 0; c < channels; ++c) {
      float v;
      std::memcpy(&v, payload + (i * static_cast<std::size_t>(channels) +
                                 static_cast<std::size_t>(c)) * 4, 4);
      w.channels[static_cast<std::size_t>(c)][i] = v;
    }
  }
  return w;
}

inline WavData read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                  std::istreambuf_iterator<char>());
  return parse_wav(bytes.data(), bytes.size());
}

inline std::vector<std::uint8_t> serialize_wav(const WavData& w) {
  using namespace detail;
  const std::uint16_t channels = static_cast<std::uint16_t>(w.channels.size());
  const std::uint32_t frames = static_cast<std::uint32_t>(w.num_samples());
  const std::uint32_t data_size = frames * channels * 4;
  std::vector<std::uint8_t> out;
  out.reserve(60 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  wr_u32(out, 4 + 24 + 12 + 8 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  wr_u32(out, 16);
  wr_u16(out, 3);  // IEEE float
  wr_u16(out, channels);
  wr_u32(out, static_cast<std::uint32_t>(w.sample_rate));
  wr_u32(out, static_cast<std::uint32_t>(w.sample_rate) * channels * 4);
  wr_u16(out, static_cast<std::uint16_t>(channels * 4));
  wr_u16(out, 32);
  out.insert(out.end(), {'f', 'a', 'c', 't'});
  wr_u32(out, 4);
  wr_u32(out, frames);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  wr_u32(out, data_size);
  for (std::uint32_t i = 0; i < frames; ++i) {
    for (std::uint16_t c = 0; c < channels; ++c) {
      const float v = w.channels[c][i];
      std::uint8_t b[4];
      std::memcpy(b, &v, 4);
      out.insert(out.end(), b, b + 4);
    }
  }
  return out;
}

inline void write_wav(const std::string& path, const WavData& w) {
  const auto bytes = serialize_wav(w);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!f) throw FormatError("write failed: " + path);
}

}  // namespace adrc

#endif  // ADRC_WAV_HPP
