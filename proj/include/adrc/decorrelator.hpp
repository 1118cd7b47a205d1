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

#ifndef ADRC_DECORRELATOR_HPP
#define ADRC_DECORRELATOR_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "adrc/common.hpp"
#include "adrc/filterbank.hpp"

namespace adrc {

// Diffuse-stream decorrelation. Each diffuse channel runs the omni signal
// through a leading delay plus a cascade of three Schroeder allpass sections
// with channel-specific prime delays. Allpass filters have unit magnitude
// response everywhere, so per-band energy is preserved exactly; distinct
// delay sets make the outputs mutually uncorrelated and uncorrelated with
// the input on broadband material.

namespace detail {

inline constexpr double kAllpassGain = 0.5;

/// Section delays (samples) per decorrelated channel, all prime.
inline constexpr std::array<std::array<int, 3>, 5> kSectionDelays{{
    {113, 337, 557},
    {149, 379, 601},
    {191, 421, 653},
    {233, 463, 701},
    {277, 509, 751},
}};

/// Leading delay in slots (x bins samples), prime per channel.
inline constexpr std::array<int, 5> kLeadSlots{2, 3, 5, 7, 11};

class AllpassSection {
 public:
  explicit AllpassSection(int delay)
      : x_(static_cast<std::size_t>(delay), 0.0f),
        y_(static_cast<std::size_t>(delay), 0.0f) {}

  float process(float in) {
    const std::size_t d = x_.size();
    const float xd = x_[pos_];
    const float yd = y_[pos_];
    const float out = static_cast<float>(-kAllpassGain * in + xd + kAllpassGain * yd);
    x_[pos_] = in;
    y_[pos_] = out;
    pos_ = (pos_ + 1) % d;
    return out;
  }

  void reset() {
    std::fill(x_.begin(), x_.end(), 0.0f);
    std::fill(y_.begin(), y_.end(), 0.0f);
    pos_ = 0;
  }

 private:
  std::vector<float> x_;
  std::vector<float> y_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// One decorrelation channel: leading delay + 3 allpass sections.
class Decorrelator {
 public:
  Decorrelator(int channel_index, int sample_rate)
      : lead_(static_cast<std::size_t>(
                  detail::kLeadSlots[static_cast<std::size_t>(channel_index % 5)] *
                  filterbank_bins(sample_rate)),
              0.0f) {
    const auto& delays =
        detail::kSectionDelays[static_cast<std::size_t>(channel_index % 5)];
    for (int d : delays) sections_.emplace_back(d);
  }

  void reset() {
    std::fill(lead_.begin(), lead_.end(), 0.0f);
    lead_pos_ = 0;
    for (auto& s : sections_) s.reset();
  }

  std::vector<float> process(std::span<const float> in) {
    std::vector<float> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
      float v = lead_[lead_pos_];
      lead_[lead_pos_] = in[i];
      lead_pos_ = (lead_pos_ + 1) % lead_.size();
      for (auto& s : sections_) v = s.process(v);
      out[i] = v;
    }
    return out;
  }

 private:
  std::vector<float> lead_;
  std::size_t lead_pos_ = 0;
  std::vector<detail::AllpassSection> sections_;
};

}  // namespace adrc

#endif  // ADRC_DECORRELATOR_HPP
