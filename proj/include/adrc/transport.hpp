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

#ifndef ADRC_TRANSPORT_HPP
#define ADRC_TRANSPORT_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "adrc/bits.hpp"
#include "adrc/common.hpp"
#include "adrc/config.hpp"

namespace adrc {

// Stand-in for the core coder. PassThrough stores raw 32-bit floats and
// ignores the budget (research mode, bit-exact). ScalarQ block-compands each
// channel into the leftover frame budget: a per-channel exponent plus
// uniform mantissas, optionally on first-order differences, decimating when
// the budget cannot afford one bit per sample. Both modes are frame-local.

namespace scalarq {

inline constexpr int kHeaderBits = 9;  // silent(1) + delta(1) + exponent(7)
inline constexpr int kMaxMantissaBits = 16;

struct Layout {
  int decimation = 1;
  int coded_samples = 0;
  int mantissa_bits = 1;
};

inline Layout plan(int channels, int samples, int budget_bits) {
  Layout l;
  const auto cost_samples = [&](int dec) {
    return (samples + dec - 1) / dec;
  };
  int dec = 1;
  while (kHeaderBits * channels + channels * cost_samples(dec) > budget_bits) {
    dec *= 2;
    if (dec > samples) throw BudgetError("transport budget too small");
  }
  l.decimation = dec;
  l.coded_samples = cost_samples(dec);
  const int avail = budget_bits - kHeaderBits * channels;
  l.mantissa_bits = std::clamp(avail / (channels * l.coded_samples), 1,
                               kMaxMantissaBits);
  return l;
}

/// Smallest exponent e in [-64, 63] with 2^e >= peak.
inline int exponent_for_peak(double peak) {
  int ex = 0;
  const double m = std::frexp(peak, &ex);  // peak = m * 2^ex, m in [0.5, 1)
  int e = (m == 0.5) ? ex - 1 : ex;
  return std::clamp(e, -64, 63);
}

}  // namespace scalarq

inline void encode_tc(const std::vector<std::vector<float>>& tc,
                      int budget_bits, TransportMode mode, BitWriter& w) {
  if (mode == TransportMode::PassThrough) {
    for (const auto& ch : tc)
      for (float v : ch) w.put_f32(v);
    return;
  }
  if (budget_bits <= 0) throw BudgetError("no transport budget");
  const int channels = static_cast<int>(tc.size());
  const int samples = static_cast<int>(tc.at(0).size());
  const auto l = scalarq::plan(channels, samples, budget_bits);
  const int q = l.mantissa_bits;
  const double lmax = (q >= 2) ? static_cast<double>((1 << (q - 1)) - 1) : 1.0;

  for (const auto& ch : tc) {
    std::vector<double> dec(static_cast<std::size_t>(l.coded_samples));
    for (int i = 0; i < l.coded_samples; ++i)
      dec[static_cast<std::size_t>(i)] = ch[static_cast<std::size_t>(i) * l.decimation];

    double peak_direct = 0.0, peak_delta = 0.0, prev = 0.0;
    for (double v : dec) {
      peak_direct = std::max(peak_direct, std::abs(v));
      peak_delta = std::max(peak_delta, std::abs(v - prev));
      prev = v;
    }
    if (peak_direct == 0.0) {
      w.put_bit(1);  // silent
      continue;
    }
    w.put_bit(0);
    const bool delta = peak_delta < peak_direct;
    w.put_bit(delta ? 1 : 0);
    const int e = scalarq::exponent_for_peak(delta ? peak_delta : peak_direct);
    w.put(static_cast<std::uint64_t>(e + 64), 7);
    const double scale = std::ldexp(1.0, e);
    double rec = 0.0;
    for (double v : dec) {
      const double target = delta ? v - rec : v;
      long code = std::lround(target / scale * lmax);
      if (q == 1) code = target >= 0.0 ? 1 : -1;
      code = std::clamp(code, -static_cast<long>(lmax), static_cast<long>(lmax));
      const double rq = (q == 1 ? (code > 0 ? 0.5 : -0.5) * scale
                                : static_cast<double>(code) / lmax * scale);
      rec = delta ? rec + rq : rq;
      // two's complement storage in q bits (sign bit for q == 1)
      const std::uint64_t stored =
          q == 1 ? (code > 0 ? 1u : 0u)
                 : static_cast<std::uint64_t>(code) & ((1ull << q) - 1);
      w.put(stored, q);
    }
  }
}

inline std::vector<std::vector<float>> decode_tc(BitReader& r, TransportMode mode,
                                                 int channels, int samples,
                                                 int budget_bits) {
  std::vector<std::vector<float>> tc(
      static_cast<std::size_t>(channels),
      std::vector<float>(static_cast<std::size_t>(samples), 0.0f));
  if (mode == TransportMode::PassThrough) {
    for (auto& ch : tc)
      for (auto& v : ch) v = r.get_f32();
    return tc;
  }
  const auto l = scalarq::plan(channels, samples, budget_bits);
  const int q = l.mantissa_bits;
  const double lmax = (q >= 2) ? static_cast<double>((1 << (q - 1)) - 1) : 1.0;
  for (auto& ch : tc) {
    if (r.get_bit()) continue;  // silent channel
    const bool delta = r.get_bit() != 0;
    const int e = static_cast<int>(r.get(7)) - 64;
    const double scale = std::ldexp(1.0, e);
    std::vector<double> dec(static_cast<std::size_t>(l.coded_samples));
    double rec = 0.0;
    for (int i = 0; i < l.coded_samples; ++i) {
      double rq;
      if (q == 1) {
        rq = (r.get_bit() ? 0.5 : -0.5) * scale;
      } else {
        std::uint64_t u = r.get(q);
        // sign extend
        if (u & (1ull << (q - 1))) u |= ~((1ull << q) - 1);
        rq = static_cast<double>(static_cast<std::int64_t>(u)) / lmax * scale;
      }
      rec = delta ? rec + rq : rq;
      dec[static_cast<std::size_t>(i)] = rec;
    }
    // linear interpolation back to the frame grid; hold after the last point
    for (int i = 0; i < samples; ++i) {
      const int j = i / l.decimation;
      const int frac = i - j * l.decimation;
      double v;
      if (frac == 0 || j + 1 >= l.coded_samples) {
        v = dec[static_cast<std::size_t>(std::min(j, l.coded_samples - 1))];
      } else {
        const double t = static_cast<double>(frac) / l.decimation;
        v = dec[static_cast<std::size_t>(j)] * (1.0 - t) +
            dec[static_cast<std::size_t>(j) + 1] * t;
      }
      ch[static_cast<std::size_t>(i)] = static_cast<float>(v);
    }
  }
  return tc;
}

}  // namespace adrc

#endif  // ADRC_TRANSPORT_HPP
