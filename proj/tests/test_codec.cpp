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

#include "adrc/codec.hpp"
#include "adrc/eval.hpp"

using namespace adrc;

namespace {

GeneratedScene plane_scene(double az, double el, double seconds, unsigned seed) {
  SceneSpec spec;
  spec.seconds = seconds;
  spec.seed = seed;
  spec.sources.push_back({make_direction(az, el), 1.0});
  return gen_scene(spec, 3);
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

TEST_CASE("one second at 32 kbps gives 50 frames of 80 bytes") {
  const auto scene = plane_scene(0.5, 0.0, 1.0, 60);
  const CodecConfig cfg = make_config(32000, 48000, 3);
  EncodeStats stats;
  const auto stream = encode_stream(scene.frame, cfg, &stats);
  CHECK(stats.frames == 50);
  CHECK(stream.size() == kHeaderBytes + 50 * 80);
}

TEST_CASE("silence encodes to valid frames and decodes to silence") {
  AmbisonicFrame silence = make_ambisonic_frame(1, 48000, 4800);
  const CodecConfig cfg = make_config(48000, 48000, 1);
  const auto stream = encode_stream(silence, cfg);
  const auto res = decode_stream(stream);
  CHECK(res.failed_frames.empty());
  for (const auto& ch : res.pcm.channels)
    for (float v : ch) CHECK(std::abs(v) < 1e-9f);
}

TEST_CASE("order-0 input is rejected") {
  const CodecConfig cfg = make_config(32000, 48000, 1);
  Encoder enc(cfg);
  AmbisonicFrame mono = make_ambisonic_frame(0, 48000, 960);
  CHECK_THROWS_AS(enc.encode_frame(mono), ConfigError);
}

TEST_CASE("W channel survives the codec at filterbank quality (passthrough)") {
  for (int bitrate : {32000, 64000, 128000}) {
    const auto scene = plane_scene(0.4, -0.15, 0.5, 61);
    const CodecConfig cfg =
        make_config(bitrate, 48000, 3, TransportMode::PassThrough);
    const auto stream = encode_stream(scene.frame, cfg);
    const auto res = decode_stream(stream);
    REQUIRE(res.failed_frames.empty());
    const auto lat = static_cast<std::size_t>(
        filterbank_latency_samples(cfg.sample_rate));
    CHECK(snr_db(scene.frame.channels[0], res.pcm.channels[0], lat) >= 50.0);
  }
}

TEST_CASE("constant latency equals the filterbank round trip") {
  const CodecConfig cfg = make_config(64000, 48000, 3, TransportMode::PassThrough);
  Encoder enc(cfg);
  Decoder dec(cfg);
  CHECK(enc.latency_samples() == 60);
  CHECK(dec.latency_samples() == 60);
  // impulse through the whole chain on the W path
  AmbisonicFrame in = make_ambisonic_frame(3, 48000, 960);
  std::vector<float> out;
  for (int f = 0; f < 3; ++f) {
    std::fill(in.channels[0].begin(), in.channels[0].end(), 0.0f);
    if (f == 0) in.channels[0][500] = 1.0f;
    const auto frame = enc.encode_frame(in);
    const auto pcm = dec.decode_frame(frame.data(), frame.size());
    out.insert(out.end(), pcm.channels[0].begin(), pcm.channels[0].end());
  }
  std::size_t peak = 0;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (std::abs(out[i]) > std::abs(out[peak])) peak = i;
  CHECK(peak == 560);
}

TEST_CASE("decoding a stream twice is bit-identical") {
  const auto scene = plane_scene(-0.9, 0.3, 0.3, 62);
  const CodecConfig cfg = make_config(64000, 48000, 3, TransportMode::PassThrough);
  const auto stream = encode_stream(scene.frame, cfg);
  const auto a = decode_stream(stream);
  const auto b = decode_stream(stream);
  CHECK(a.pcm.channels == b.pcm.channels);
}

TEST_CASE("encoding twice is byte-identical") {
  const auto scene = plane_scene(1.2, -0.4, 0.3, 63);
  for (auto transport : {TransportMode::ScalarQ, TransportMode::PassThrough}) {
    const CodecConfig cfg = make_config(48000, 48000, 3, transport);
    CHECK(encode_stream(scene.frame, cfg) == encode_stream(scene.frame, cfg));
  }
}

TEST_CASE("decoder recovers after a corrupted frame") {
  const auto scene = plane_scene(0.2, 0.1, 0.4, 64);
  const CodecConfig cfg = make_config(32000, 48000, 3);
  auto stream = encode_stream(scene.frame, cfg);
  // corrupt frame 5's first DOA index (after 5 bands x 3 bits) to all-ones;
  // with a non-diffuse scene the widths are [8,8,8,7,7], so 255 >= grid(8)
  const std::size_t frame_off = kHeaderBytes + 5 * 80;
  // bits 15..22 of the frame
  stream[frame_off + 1] |= 0x01;
  stream[frame_off + 2] = 0xFF;
  const auto res = decode_stream(stream);
  REQUIRE(res.failed_frames.size() == 1);
  CHECK(res.failed_frames[0] == 5);
  // the failed frame fades out (filterbank/decorrelator tails), the stream
  // resumes at the next frame
  double e_fail = 0.0, e_next = 0.0;
  for (int c = 0; c < 16; ++c) {
    for (std::size_t i = 5 * 960 + 480; i < 6 * 960; ++i)
      e_fail += std::abs(res.pcm.channels[static_cast<std::size_t>(c)][i]);
    for (std::size_t i = 7 * 960; i < 8 * 960; ++i)
      e_next += std::abs(res.pcm.channels[static_cast<std::size_t>(c)][i]);
  }
  CHECK(e_fail < 0.01 * e_next);
  CHECK(e_next > 0.0);
}

TEST_CASE("4-TC decoder-side analysis matches the encoder below 8 kHz") {
  SceneSpec spec;
  spec.seconds = 0.4;
  spec.seed = 65;
  spec.sources.push_back({make_direction(0.7, -0.1), 0.8});
  spec.diffuse_level = 0.4;
  const auto scene = gen_scene(spec, 3);
  const CodecConfig cfg =
      make_config(128000, 48000, 3, TransportMode::PassThrough);
  Encoder enc(cfg);
  Decoder dec(cfg);
  const std::size_t fs = static_cast<std::size_t>(cfg.frame_samples());
  AmbisonicFrame chunk = make_ambisonic_frame(3, 48000, fs);
  const int high0 = cfg.first_coded_band();
  for (std::size_t f = 0; f * fs < scene.frame.num_samples(); ++f) {
    for (std::size_t c = 0; c < 16; ++c)
      std::copy(scene.frame.channels[c].begin() + static_cast<std::ptrdiff_t>(f * fs),
                scene.frame.channels[c].begin() + static_cast<std::ptrdiff_t>((f + 1) * fs),
                chunk.channels[c].begin());
    const auto bytes = enc.encode_frame(chunk);
    (void)dec.decode_frame(bytes.data(), bytes.size());
    const auto& ep = enc.last_frame_params();
    REQUIRE(dec.last_decoder_analysis().has_value());
    const auto& dp = *dec.last_decoder_analysis();
    for (int b = 0; b < high0; ++b) {
      CHECK_THAT(dp.diffuseness[static_cast<std::size_t>(b)],
                 Catch::Matchers::WithinAbs(
                     ep.diffuseness[static_cast<std::size_t>(b)], 1e-6));
      for (int sf = 0; sf < 4; ++sf) {
        const auto& ed = ep.doa[static_cast<std::size_t>(b)][static_cast<std::size_t>(sf)];
        const auto& dd = dp.doa[static_cast<std::size_t>(b)][static_cast<std::size_t>(sf)];
        // 1e-6 rad, expressed in degrees
        CHECK(central_angle_deg(ed, dd) < 1e-6 * 180.0 / kPi);
      }
    }
  }
}

TEST_CASE("4-TC parameter payload stays under the 4.8 kbps cap") {
  const auto scene = plane_scene(0.0, 0.0, 0.3, 66);
  const CodecConfig cfg = make_config(128000, 48000, 3);
  EncodeStats stats;
  (void)encode_stream(scene.frame, cfg, &stats);
  CHECK(stats.param_bits_max <= 96);
}

TEST_CASE("re-encoding the decoded FOA reproduces the parameter indices") {
  const auto scene = plane_scene(0.45, 0.2, 0.5, 67);
  const CodecConfig cfg = make_config(64000, 48000, 3, TransportMode::PassThrough);
  const auto stream1 = encode_stream(scene.frame, cfg);
  const auto dec1 = decode_stream(stream1);

  // latency-align, then feed the decoded FOA subset back
  const auto lat = static_cast<std::size_t>(filterbank_latency_samples(48000));
  AmbisonicFrame again = make_ambisonic_frame(1, 48000, dec1.pcm.num_samples() - lat);
  for (int c = 0; c < 4; ++c)
    again.channels[static_cast<std::size_t>(c)]
        .assign(dec1.pcm.channels[static_cast<std::size_t>(c)].begin() +
                    static_cast<std::ptrdiff_t>(lat),
                dec1.pcm.channels[static_cast<std::size_t>(c)].end());
  const auto stream2 = encode_stream(again, cfg);

  // compare parameter payload indices frame by frame
  const auto d1 = demux(stream1);
  const auto d2 = demux(stream2);
  std::size_t mismatches = 0, total = 0;
  const std::size_t frames = std::min(d1.frames.size(), d2.frames.size());
  for (std::size_t f = 1; f + 1 < frames; ++f) {
    BitReader r1(d1.frames[f]);
    BitReader r2(d2.frames[f]);
    const auto q1 = read_frame_params(r1, cfg);
    const auto q2 = read_frame_params(r2, cfg);
    for (std::size_t b = 0; b < q1.diff_index.size(); ++b) {
      ++total;
      if (q1.diff_index[b] != q2.diff_index[b]) ++mismatches;
      for (int sf = 0; sf < 4; ++sf) {
        ++total;
        if (q1.doa_index[b][static_cast<std::size_t>(sf)] !=
            q2.doa_index[b][static_cast<std::size_t>(sf)])
          ++mismatches;
      }
    }
  }
  CHECK(static_cast<double>(mismatches) <= 1e-3 * static_cast<double>(total));
}

TEST_CASE("32 kHz streams work end to end") {
  SceneSpec spec;
  spec.seconds = 0.4;
  spec.seed = 68;
  spec.sample_rate = 32000;
  spec.sources.push_back({make_direction(-0.3, 0.5), 1.0});
  const auto scene = gen_scene(spec, 2);
  const CodecConfig cfg = make_config(64000, 32000, 2, TransportMode::PassThrough);
  const auto stream = encode_stream(scene.frame, cfg);
  const auto res = decode_stream(stream);
  CHECK(res.failed_frames.empty());
  const auto lat = static_cast<std::size_t>(filterbank_latency_samples(32000));
  CHECK(snr_db(scene.frame.channels[0], res.pcm.channels[0], lat) >= 50.0);
  CHECK(res.pcm.channels.size() == 16);
}

TEST_CASE("32 kHz 4-TC streams use the 12 kHz band split") {
  const BandGrouping g = make_bands(32000, 6);
  CHECK(g.edges == std::vector<int>{0, 2, 5, 12, 20, 30, 40});
  CHECK(first_high_band(g) == 4);

  // plane wave: psi 0 in every band, so the omni passes through unscaled
  SceneSpec spec;
  spec.seconds = 0.3;
  spec.seed = 80;
  spec.sample_rate = 32000;
  spec.sources.push_back({make_direction(0.2, 0.4), 0.7});
  const auto scene = gen_scene(spec, 3);
  const CodecConfig cfg = make_config(128000, 32000, 3, TransportMode::PassThrough);
  CHECK(cfg.num_bands == 6);
  const auto stream = encode_stream(scene.frame, cfg);
  const auto res = decode_stream(stream);
  CHECK(res.failed_frames.empty());
  const auto lat = static_cast<std::size_t>(filterbank_latency_samples(32000));
  CHECK(snr_db(scene.frame.channels[0], res.pcm.channels[0], lat) >= 50.0);
}

TEST_CASE("inputs are zero-padded to whole frames") {
  const auto scene = plane_scene(0.1, 0.1, 0.205, 81);  // 10.25 frames
  const CodecConfig cfg = make_config(32000, 48000, 3);
  EncodeStats stats;
  const auto stream = encode_stream(scene.frame, cfg, &stats);
  CHECK(stats.frames == 11);
  CHECK(decode_stream(stream).pcm.num_samples() == 11 * 960);
}

TEST_CASE("frame size and sample-rate validation") {
  const CodecConfig cfg = make_config(48000, 48000, 1);
  Encoder enc(cfg);
  AmbisonicFrame bad = make_ambisonic_frame(1, 48000, 100);
  CHECK_THROWS_AS(enc.encode_frame(bad), ConfigError);
  AmbisonicFrame wrong_rate = make_ambisonic_frame(1, 32000, 960);
  CHECK_THROWS_AS(enc.encode_frame(wrong_rate), ConfigError);
  Decoder dec(cfg);
  std::vector<std::uint8_t> tiny(10);
  CHECK_THROWS_AS(dec.decode_frame(tiny.data(), tiny.size()), FrameError);
}
