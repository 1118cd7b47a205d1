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

#ifndef ADRC_FILTERBANK_HPP
#define ADRC_FILTERBANK_HPP

#include <cmath>
#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "adrc/common.hpp"

namespace adrc {

/// Complex filterbank coefficients of one channel for one time slot.
using Spectrum = std::vector<std::complex<float>>;

/// One 1.25 ms time slot across channels: [channel][bin].
struct TfSlot {
  std::vector<Spectrum> ch;
};

/// One 20 ms codec frame = 16 consecutive slots.
struct TfFrame {
  std::vector<TfSlot> slots;
};

inline constexpr int kSlotsPerFrame = 16;
inline constexpr int kSubframesPerFrame = 4;
inline constexpr int kSlotsPerSubframe = 4;

inline bool supported_sample_rate(int fs) { return fs == 32000 || fs == 48000; }

/// Number of 400 Hz bins (also the slot hop in samples) for a sample rate.
inline int filterbank_bins(int fs) {
  if (!supported_sample_rate(fs))
    throw ConfigError("unsupported sample rate " + std::to_string(fs));
  return fs / 800;
}

inline constexpr double kBinWidthHz = 400.0;

/// Center frequency of a bin (oddly stacked: (k + 1/2) * 400 Hz).
inline double bin_center_hz(int k) { return (k + 0.5) * kBinWidthHz; }

namespace detail {

/// Shared modulation tables for an M-bin oddly-stacked transform with a sine
/// window of length 2M and hop M. The transform maps each windowed 2M-sample
/// block to M complex bins; with the 1/sqrt(M) scaling the coefficients are
/// energy-preserving and the analysis-synthesis cascade reconstructs the
/// input exactly (one hop of latency).
struct FilterbankTables {
  int bins;
  std::vector<double> window;  // 2M
  std::vector<double> cosine;  // M x 2M
  std::vector<double> sine;    // M x 2M

  explicit FilterbankTables(int m) : bins(m) {
    const int n2 = 2 * m;
    window.resize(n2);
    for (int n = 0; n < n2; ++n)
      window[n] = std::sin(kPi * (n + 0.5) / n2);
    cosine.resize(static_cast<std::size_t>(m) * n2);
    sine.resize(static_cast<std::size_t>(m) * n2);
    for (int k = 0; k < m; ++k) {
      for (int n = 0; n < n2; ++n) {
        const double ph = kPi * (k + 0.5) * (2 * n + 1) / (2.0 * m);
        cosine[static_cast<std::size_t>(k) * n2 + n] = std::cos(ph);
        sine[static_cast<std::size_t>(k) * n2 + n] = std::sin(ph);
      }
    }
  }

  static std::shared_ptr<const FilterbankTables> get(int m) {
    static std::shared_ptr<const FilterbankTables> cache32 =
        std::make_shared<const FilterbankTables>(40);
    static std::shared_ptr<const FilterbankTables> cache48 =
        std::make_shared<const FilterbankTables>(60);
    if (m == 40) return cache32;
    if (m == 60) return cache48;
    return std::make_shared<const FilterbankTables>(m);
  }
};

}  // namespace detail

/// Streaming analysis for one channel. Feed hops of M samples; each hop
/// yields one slot of M complex bins. Keeps the previous hop as state, so the
/// slot produced for hop h covers input samples [(h-1)M, (h+1)M).
class FilterbankAnalyzer {
 public:
  explicit FilterbankAnalyzer(int sample_rate)
      : tables_(detail::FilterbankTables::get(filterbank_bins(sample_rate))),
        state_(static_cast<std::size_t>(tables_->bins), 0.0f) {}

  int bins() const { return tables_->bins; }

  void reset() { std::fill(state_.begin(), state_.end(), 0.0f); }

  Spectrum process_hop(std::span<const float> hop) {
    const int m = tables_->bins;
    if (static_cast<int>(hop.size()) != m)
      throw ConfigError("analysis hop size mismatch");
    const int n2 = 2 * m;
    std::vector<double> block(static_cast<std::size_t>(n2));
    for (int n = 0; n < m; ++n) block[n] = state_[n] * tables_->window[n];
    for (int n = 0; n < m; ++n) block[m + n] = hop[n] * tables_->window[m + n];
    Spectrum out(static_cast<std::size_t>(m));
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int k = 0; k < m; ++k) {
      const double* c = &tables_->cosine[static_cast<std::size_t>(k) * n2];
      const double* s = &tables_->sine[static_cast<std::size_t>(k) * n2];
      double re = 0.0, im = 0.0;
      for (int n = 0; n < n2; ++n) {
        re += block[n] * c[n];
        im -= block[n] * s[n];
      }
      out[k] = std::complex<float>(static_cast<float>(re * scale),
                                   static_cast<float>(im * scale));
    }
    for (int n = 0; n < m; ++n) state_[n] = hop[n];
    return out;
  }

 private:
  std::shared_ptr<const detail::FilterbankTables> tables_;
  std::vector<float> state_;
};

/// Streaming synthesis for one channel. Feed one slot per hop; returns M
/// completed output samples (overlap-add with the previous slot's tail).
class FilterbankSynthesizer {
 public:
  explicit FilterbankSynthesizer(int sample_rate)
      : tables_(detail::FilterbankTables::get(filterbank_bins(sample_rate))),
        tail_(static_cast<std::size_t>(tables_->bins), 0.0) {}

  int bins() const { return tables_->bins; }

  void reset() { std::fill(tail_.begin(), tail_.end(), 0.0); }

  std::vector<float> process_slot(const Spectrum& slot) {
    const int m = tables_->bins;
    if (static_cast<int>(slot.size()) != m)
      throw ConfigError("synthesis bin count mismatch");
    const int n2 = 2 * m;
    std::vector<double> block(static_cast<std::size_t>(n2), 0.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int k = 0; k < m; ++k) {
      const double re = slot[k].real();
      const double im = slot[k].imag();
      if (re == 0.0 && im == 0.0) continue;
      const double* c = &tables_->cosine[static_cast<std::size_t>(k) * n2];
      const double* s = &tables_->sine[static_cast<std::size_t>(k) * n2];
      for (int n = 0; n < n2; ++n) block[n] += re * c[n] - im * s[n];
    }
    std::vector<float> out(static_cast<std::size_t>(m));
    for (int n = 0; n < n2; ++n) block[n] *= scale * tables_->window[n];
    for (int n = 0; n < m; ++n) {
      out[n] = static_cast<float>(tail_[n] + block[n]);
      tail_[n] = block[m + n];
    }
    return out;
  }

 private:
  std::shared_ptr<const detail::FilterbankTables> tables_;
  std::vector<double> tail_;
};

/// Algorithmic latency of an analysis+synthesis round trip, in samples
/// (one hop, i.e. 1.25 ms).
inline int filterbank_latency_samples(int sample_rate) {
  return filterbank_bins(sample_rate);
}

/// Analyzes one 20 ms frame of multichannel pcm into 16 slots.
inline TfFrame analyze_frame(std::vector<FilterbankAnalyzer>& analyzers,
                             const std::vector<std::vector<float>>& pcm,
                             std::size_t offset) {
  TfFrame f;
  f.slots.resize(kSlotsPerFrame);
  const int m = analyzers.at(0).bins();
  for (int s = 0; s < kSlotsPerFrame; ++s) {
    f.slots[s].ch.resize(pcm.size());
    for (std::size_t c = 0; c < pcm.size(); ++c) {
      std::span<const float> hop(pcm[c].data() + offset + static_cast<std::size_t>(s) * m,
                                 static_cast<std::size_t>(m));
      f.slots[s].ch[c] = analyzers[c].process_hop(hop);
    }
  }
  return f;
}

}  // namespace adrc

#endif  // ADRC_FILTERBANK_HPP
