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

#ifndef ADRC_BITS_HPP
#define ADRC_BITS_HPP

#include <cstdint>
#include <cstring>
#include <vector>

#include "adrc/common.hpp"

namespace adrc {

/// MSB-first bit packer. Values are written big-endian within their field.
class BitWriter {
 public:
  void put(std::uint64_t value, int bits) {
    for (int i = bits - 1; i >= 0; --i) put_bit((value >> i) & 1u);
  }

  void put_bit(std::uint64_t b) {
    if (fill_ == 0) {
      bytes_.push_back(0);
      fill_ = 8;
    }
    --fill_;
    if (b) bytes_.back() |= static_cast<std::uint8_t>(1u << fill_);
    ++count_;
  }

  void put_f32(float v) {
    std::uint32_t u;
    static_assert(sizeof(u) == sizeof(v));
    std::memcpy(&u, &v, sizeof(u));
    put(u, 32);
  }

  /// Bits written so far.
  std::size_t bit_count() const { return count_; }

  /// Pads with zero bits to `total_bytes` and returns the buffer.
  std::vector<std::uint8_t> finish(std::size_t total_bytes) {
    if (bytes_.size() > total_bytes)
      throw Error("payload exceeds frame size");
    bytes_.resize(total_bytes, 0);
    return std::move(bytes_);
  }

  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  int fill_ = 0;
  std::size_t count_ = 0;
};

/// MSB-first bit reader over a byte buffer.
class BitReader {
 public:
  BitReader(const std::uint8_t* data, std::size_t size_bytes)
      : data_(data), size_bits_(size_bytes * 8) {}
  explicit BitReader(const std::vector<std::uint8_t>& bytes)
      : BitReader(bytes.data(), bytes.size()) {}

  std::uint64_t get(int bits) {
    std::uint64_t v = 0;
    for (int i = 0; i < bits; ++i) v = (v << 1) | get_bit();
    return v;
  }

  std::uint64_t get_bit() {
    if (pos_ >= size_bits_) throw Error("bit reader: out of data");
    const std::size_t byte = pos_ >> 3;
    const int shift = 7 - static_cast<int>(pos_ & 7);
    ++pos_;
    return (data_[byte] >> shift) & 1u;
  }

  float get_f32() {
    const std::uint32_t u = static_cast<std::uint32_t>(get(32));
    float v;
    std::memcpy(&v, &u, sizeof(v));
    return v;
  }

  std::size_t bit_pos() const { return pos_; }
  std::size_t bits_left() const { return size_bits_ - pos_; }

 private:
  const std::uint8_t* data_;
  std::size_t size_bits_;
  std::size_t pos_ = 0;
};

}  // namespace adrc

#endif  // ADRC_BITS_HPP
