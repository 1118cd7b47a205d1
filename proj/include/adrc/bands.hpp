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

#ifndef ADRC_BANDS_HPP
#define ADRC_BANDS_HPP

#include <vector>

#include "adrc/common.hpp"
#include "adrc/filterbank.hpp"

namespace adrc {

/// Grouping of filterbank bins into non-overlapping, contiguous parameter
/// bands covering all bins. Edges approximate an 8x-ERB scale; the top edge
/// of the 8 kHz band lines up with the decorrelation cutoff.
struct BandGrouping {
  std::vector<int> edges;  // band b covers bins [edges[b], edges[b+1])

  int num_bands() const { return static_cast<int>(edges.size()) - 1; }
  int begin(int b) const { return edges[static_cast<std::size_t>(b)]; }
  int end(int b) const { return edges[static_cast<std::size_t>(b) + 1]; }
  int band_of_bin(int k) const {
    for (int b = 0; b < num_bands(); ++b)
      if (k < end(b)) return b;
    return num_bands() - 1;
  }
};

inline constexpr int kCutoffBin = 20;  // 8 kHz / 400 Hz

/// Band-edge tables in bin indices. The 5-band grouping splits at 0.8, 2,
/// 4.8 and 8 kHz; the 6-band grouping also splits the top band (at 16 kHz
/// for 48 kHz streams, 12 kHz for 32 kHz streams).
inline BandGrouping make_bands(int sample_rate, int num_bands) {
  const int bins = filterbank_bins(sample_rate);
  BandGrouping g;
  if (num_bands == 5) {
    g.edges = {0, 2, 5, 12, kCutoffBin, bins};
  } else if (num_bands == 6) {
    const int split = (sample_rate == 48000) ? 40 : 30;
    g.edges = {0, 2, 5, 12, kCutoffBin, split, bins};
  } else {
    throw ConfigError("band count must be 5 or 6");
  }
  return g;
}

/// Index of the first band at or above the 8 kHz decorrelation cutoff.
inline int first_high_band(const BandGrouping& g) {
  for (int b = 0; b < g.num_bands(); ++b)
    if (g.begin(b) >= kCutoffBin) return b;
  return g.num_bands();
}

}  // namespace adrc

#endif  // ADRC_BANDS_HPP
