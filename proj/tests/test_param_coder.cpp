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

#include "adrc/param_coder.hpp"

using namespace adrc;

namespace {

std::vector<std::vector<BandObservation>> constant_obs(int bands, const Vec3& i,
                                                       double e) {
  std::vector<std::vector<BandObservation>> obs(
      kSlotsPerFrame, std::vector<BandObservation>(static_cast<std::size_t>(bands)));
  for (auto& slot : obs)
    for (auto& o : slot) {
      o.intensity = i;
      o.energy = e;
    }
  return obs;
}

std::vector<std::vector<double>> constant_psi(int bands, double psi) {
  return {kSlotsPerFrame, std::vector<double>(static_cast<std::size_t>(bands), psi)};
}

}  // namespace

TEST_CASE("constant diffuseness downsamples to itself") {
  ParamDownsampler ds(5);
  const auto p = ds.downsample(constant_obs(5, {-1, 0, 0}, 1.0), constant_psi(5, 0.3));
  for (double v : p.diffuseness) CHECK_THAT(v, Catch::Matchers::WithinAbs(0.3, 1e-12));
}

TEST_CASE("constant DOA downsamples to the same DOA per subframe") {
  ParamDownsampler ds(5);
  const Vec3 i{-0.3, -0.4, -0.5};
  const auto p = ds.downsample(constant_obs(5, i, 1.0), constant_psi(5, 0.0));
  const Direction want = direction_from_intensity(i);
  for (const auto& band : p.doa)
    for (const auto& d : band) CHECK(central_angle_deg(d, want) < 1e-9);
}

TEST_CASE("alternating +-10 degree DOAs average to the front") {
  ParamDownsampler ds(1);
  std::vector<std::vector<BandObservation>> obs(
      kSlotsPerFrame, std::vector<BandObservation>(1));
  for (int s = 0; s < kSlotsPerFrame; ++s) {
    const double az = (s % 2 == 0 ? 10.0 : -10.0) * kPi / 180.0;
    const Vec3 u = to_unit_vector(make_direction(az, 0.0));
    obs[static_cast<std::size_t>(s)][0].intensity = {-u[0], -u[1], -u[2]};
    obs[static_cast<std::size_t>(s)][0].energy = 1.0;
  }
  const auto p = ds.downsample(obs, constant_psi(1, 0.0));
  for (const auto& d : p.doa[0]) {
    CHECK_THAT(d.azimuth, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(d.elevation, Catch::Matchers::WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("diffuseness is energy weighted") {
  ParamDownsampler ds(1);
  auto obs = constant_obs(1, {-1, 0, 0}, 1.0);
  auto psi = constant_psi(1, 0.2);
  // double energy on the second half with psi 0.8
  for (int s = 8; s < 16; ++s) {
    obs[static_cast<std::size_t>(s)][0].energy = 2.0;
    psi[static_cast<std::size_t>(s)][0] = 0.8;
  }
  const auto p = ds.downsample(obs, psi);
  // (8*1*0.2 + 8*2*0.8) / (8 + 16)
  CHECK_THAT(p.diffuseness[0], Catch::Matchers::WithinAbs((1.6 + 12.8) / 24.0, 1e-12));
}

TEST_CASE("silent subframes hold the previous DOA") {
  ParamDownsampler ds(1);
  auto obs = constant_obs(1, {0, -2, 0}, 2.0);
  // second half of the frame silent
  for (int s = 8; s < 16; ++s) obs[static_cast<std::size_t>(s)][0] = BandObservation{};
  const auto p = ds.downsample(obs, constant_psi(1, 0.0));
  CHECK_THAT(p.doa[0][1].azimuth, Catch::Matchers::WithinAbs(kPi / 2, 1e-12));
  CHECK(p.doa[0][2].azimuth == p.doa[0][1].azimuth);
  CHECK(p.doa[0][3].azimuth == p.doa[0][1].azimuth);
}

TEST_CASE("bit demand arithmetic: worst case reduced under the 32 kbps cap") {
  // 5 bands, all non-diffuse: 5*3 + 5*4*11 = 235 bits = 11.75 kbps demanded
  const std::vector<int> diff(5, 0);
  CHECK(params_payload_bits(std::vector<int>(5, 11)) == 235);
  const int cap = 170;  // 8.5 kbps at 20 ms
  const auto bits = allocate_doa_bits(diff, cap);
  CHECK(params_payload_bits(bits) <= cap);
  // deterministic reduction: highest band drops first
  CHECK(bits == std::vector<int>{8, 8, 8, 7, 7});
  CHECK(params_payload_bits(bits) == 167);
}

TEST_CASE("fully diffuse frames stay under every cap") {
  // 5*3 + 5*4*2 = 55 bits = 2.75 kbps
  const std::vector<int> diff(5, 7);
  const auto bits = allocate_doa_bits(diff, 120);
  CHECK(bits == std::vector<int>(5, 2));
  CHECK(params_payload_bits(bits) == 55);
}

TEST_CASE("no reduction when under budget") {
  const std::vector<int> diff{0, 2, 4, 6, 7};
  const auto bits = allocate_doa_bits(diff, 1000);
  CHECK(bits == std::vector<int>{11, 10, 7, 3, 2});
}

TEST_CASE("4-TC high-band payload fits 4.8 kbps without reduction") {
  const std::vector<int> diff(2, 0);
  const auto bits = allocate_doa_bits(diff, 96);
  CHECK(bits == std::vector<int>(2, 11));
  CHECK(params_payload_bits(bits) == 94);
}

TEST_CASE("encode/decode round trip restores indices and widths") {
  CodecConfig cfg = make_config(32000, 48000, 1);
  FrameParams params;
  params.diffuseness = {0.01, 0.12, 0.33, 0.5, 0.96};
  params.doa.resize(5);
  for (int b = 0; b < 5; ++b)
    for (int sf = 0; sf < 4; ++sf)
      params.doa[static_cast<std::size_t>(b)][static_cast<std::size_t>(sf)] =
          make_direction(0.3 * b - 0.7, 0.2 * sf - 0.3);
  const auto q = encode_frame_params(params, cfg);
  CHECK(q.payload_bits <= cfg.cap_bits);

  BitWriter w;
  write_frame_params(w, q);
  CHECK(static_cast<int>(w.bit_count()) == q.payload_bits);
  const auto bytes = w.take();
  BitReader r(bytes);
  const auto q2 = read_frame_params(r, cfg);
  CHECK(q2.diff_index == q.diff_index);
  CHECK(q2.doa_bits == q.doa_bits);
  CHECK(q2.doa_index == q.doa_index);
  CHECK(q2.payload_bits == q.payload_bits);

  // payload length is a function of the diffuseness indices alone
  CHECK(static_cast<std::size_t>(r.bit_pos()) ==
        static_cast<std::size_t>(q.payload_bits));
}

TEST_CASE("payload parse rejects out-of-grid DOA indices") {
  CodecConfig cfg = make_config(32000, 48000, 1);
  BitWriter w;
  // five non-diffuse bands then an invalid all-ones DOA index
  for (int b = 0; b < 5; ++b) w.put(0, 3);
  const auto bits = allocate_doa_bits(std::vector<int>(5, 0), cfg.cap_bits);
  w.put((1u << bits[0]) - 1, bits[0]);  // 255 >= grid size at 8 bits
  for (int i = 1; i < 20; ++i) w.put(0, bits[static_cast<std::size_t>(i / 4)]);
  const auto bytes = w.take();
  BitReader r(bytes);
  CHECK_THROWS_AS(read_frame_params(r, cfg), Error);
}

TEST_CASE("band count mismatch raises") {
  CodecConfig cfg = make_config(32000, 48000, 1);
  FrameParams params;
  params.diffuseness.assign(4, 0.0);
  params.doa.resize(4);
  CHECK_THROWS_AS(encode_frame_params(params, cfg), ConfigError);
}
