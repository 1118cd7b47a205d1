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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "adrc/filterbank.hpp"

using namespace adrc;

namespace {

std::vector<float> white_noise(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<float> v(n);
  for (auto& x : v) x = static_cast<float>(rng() / 4294967296.0 * 2.0 - 1.0);
  return v;
}

std::vector<Spectrum> analyze_all(const std::vector<float>& x, int fs) {
  FilterbankAnalyzer an(fs);
  const int m = an.bins();
  std::vector<Spectrum> slots;
  for (std::size_t o = 0; o + static_cast<std::size_t>(m) <= x.size();
       o += static_cast<std::size_t>(m))
    slots.push_back(an.process_hop({x.data() + o, static_cast<std::size_t>(m)}));
  return slots;
}

std::vector<float> synthesize_all(const std::vector<Spectrum>& slots, int fs) {
  FilterbankSynthesizer sy(fs);
  std::vector<float> out;
  for (const auto& s : slots) {
    const auto hop = sy.process_slot(s);
    out.insert(out.end(), hop.begin(), hop.end());
  }
  return out;
}

double snr_db(const std::vector<float>& ref, const std::vector<float>& test,
              std::size_t delay) {
  double err = 0.0, sig = 0.0;
  const std::size_t n = std::min(ref.size(), test.size() - delay);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = test[i + delay] - ref[i];
    err += d * d;
    sig += static_cast<double>(ref[i]) * ref[i];
  }
  return 10.0 * std::log10(sig / (err > 0 ? err : 1e-30));
}

}  // namespace

TEST_CASE("bin count and hop per sample rate") {
  CHECK(filterbank_bins(48000) == 60);
  CHECK(filterbank_bins(32000) == 40);
  CHECK_THROWS_AS(filterbank_bins(44100), ConfigError);
  CHECK(filterbank_latency_samples(48000) == 60);
  CHECK(filterbank_latency_samples(32000) == 40);
}

TEST_CASE("silence analyzes to all-zero coefficients") {
  std::vector<float> zeros(4800, 0.0f);
  for (const auto& slot : analyze_all(zeros, 48000))
    for (const auto& c : slot) {
      CHECK(c.real() == 0.0f);
      CHECK(c.imag() == 0.0f);
    }
}

TEST_CASE("all-zero tiles synthesize silence") {
  FilterbankSynthesizer sy(48000);
  const Spectrum zeros(60);
  for (int s = 0; s < 32; ++s)
    for (float v : sy.process_slot(zeros)) CHECK(v == 0.0f);
}

TEST_CASE("white-noise round trip reconstructs above 50 dB") {
  for (int fs : {32000, 48000}) {
    const auto x = white_noise(static_cast<std::size_t>(fs), 1234);
    const auto y = synthesize_all(analyze_all(x, fs), fs);
    const auto lat = static_cast<std::size_t>(filterbank_latency_samples(fs));
    CHECK(snr_db(x, y, lat) > 50.0);
  }
}

TEST_CASE("impulse round trip measures one hop of latency") {
  std::vector<float> x(4800, 0.0f);
  x[777] = 1.0f;
  const auto y = synthesize_all(analyze_all(x, 48000), 48000);
  std::size_t peak = 0;
  for (std::size_t i = 1; i < y.size(); ++i)
    if (std::abs(y[i]) > std::abs(y[peak])) peak = i;
  CHECK(peak == 777 + 60);
}

TEST_CASE("analysis is linear") {
  const auto x = white_noise(4800, 1);
  const auto y = white_noise(4800, 2);
  std::vector<float> mix(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    mix[i] = 2.5f * x[i] - 1.25f * y[i];
  const auto ax = analyze_all(x, 48000);
  const auto ay = analyze_all(y, 48000);
  const auto am = analyze_all(mix, 48000);
  for (std::size_t s = 0; s < am.size(); ++s)
    for (std::size_t k = 0; k < am[s].size(); ++k) {
      const std::complex<float> want = 2.5f * ax[s][k] - 1.25f * ay[s][k];
      CHECK(std::abs(am[s][k] - want) < 2e-4f);
    }
}

TEST_CASE("coefficient energy matches signal energy within 0.5 dB") {
  const auto x = white_noise(48000, 77);
  const auto slots = analyze_all(x, 48000);
  double etf = 0.0;
  for (const auto& s : slots)
    for (const auto& c : s) etf += std::norm(std::complex<double>(c));
  double et = 0.0;
  for (float v : x) et += static_cast<double>(v) * v;
  CHECK(std::abs(10.0 * std::log10(etf / et)) < 0.5);
}

TEST_CASE("band-limited noise concentrates in its bin") {
  // 400 Hz-wide noise on bin 5 (2000..2400 Hz), built from random sines
  std::mt19937 rng(5);
  std::vector<float> x(48000, 0.0f);
  for (int t = 0; t < 40; ++t) {
    const double f = 2000.0 + 400.0 * (t + 0.5) / 40.0;
    const double ph = rng() / 4294967296.0 * 2.0 * kPi;
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] += static_cast<float>(std::sin(2.0 * kPi * f * i / 48000.0 + ph));
  }
  const auto slots = analyze_all(x, 48000);
  std::vector<double> eb(60, 0.0);
  for (const auto& s : slots)
    for (int k = 0; k < 60; ++k)
      eb[static_cast<std::size_t>(k)] += std::norm(std::complex<double>(s[static_cast<std::size_t>(k)]));
  double total = 0.0, inband = 0.0;
  for (int k = 0; k < 60; ++k) {
    total += eb[static_cast<std::size_t>(k)];
    if (k >= 4 && k <= 6) inband += eb[static_cast<std::size_t>(k)];
  }
  CHECK(inband / total >= 0.95);
}

TEST_CASE("constant single-bin coefficient lands near the bin center") {
  const int k = 12;
  FilterbankSynthesizer sy(48000);
  std::vector<float> tone;
  for (int s = 0; s < 800; ++s) {
    Spectrum spec(60);
    spec[k] = {1.0f, 0.0f};
    const auto hop = sy.process_slot(spec);
    tone.insert(tone.end(), hop.begin(), hop.end());
  }
  // spectral peak by scanning correlation against probe sinusoids
  double best_f = 0.0, best_p = -1.0;
  for (double f = bin_center_hz(k) - 350.0; f <= bin_center_hz(k) + 350.0;
       f += 5.0) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < tone.size(); ++i) {
      const double ph = 2.0 * kPi * f * static_cast<double>(i) / 48000.0;
      re += tone[i] * std::cos(ph);
      im += tone[i] * std::sin(ph);
    }
    const double p = re * re + im * im;
    if (p > best_p) {
      best_p = p;
      best_f = f;
    }
  }
  CHECK(std::abs(best_f - bin_center_hz(k)) <= 200.0 + 5.0);
}

TEST_CASE("speech-shaped noise round trip") {
  // first-order lowpass shaping of white noise
  auto x = white_noise(48000, 9);
  float prev = 0.0f;
  for (auto& v : x) {
    prev = 0.9f * prev + 0.1f * v;
    v = prev * 10.0f;
  }
  const auto y = synthesize_all(analyze_all(x, 48000), 48000);
  CHECK(snr_db(x, y, 60) > 50.0);
}

TEST_CASE("bin-count mismatch raises") {
  FilterbankSynthesizer sy(48000);
  CHECK_THROWS_AS(sy.process_slot(Spectrum(40)), ConfigError);
  FilterbankAnalyzer an(48000);
  std::vector<float> hop(40, 0.0f);
  CHECK_THROWS_AS(an.process_hop(hop), ConfigError);
}
