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

#ifndef ADRC_CODEC_HPP
#define ADRC_CODEC_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "adrc/ambisonic.hpp"
#include "adrc/bands.hpp"
#include "adrc/bitstream.hpp"
#include "adrc/common.hpp"
#include "adrc/config.hpp"
#include "adrc/decorrelator.hpp"
#include "adrc/dirac.hpp"
#include "adrc/filterbank.hpp"
#include "adrc/param_coder.hpp"
#include "adrc/synthesis.hpp"
#include "adrc/transport.hpp"

namespace adrc {

/// Frame-by-frame encoder. One instance per stream; the configuration is
/// fixed for the stream's lifetime.
class Encoder {
 public:
  explicit Encoder(const CodecConfig& cfg)
      : cfg_(cfg),
        dirac_(cfg.bands()),
        downsampler_(cfg.num_bands) {
    for (int c = 0; c < 4; ++c) analyzers_.emplace_back(cfg.sample_rate);
  }

  const CodecConfig& config() const { return cfg_; }
  int latency_samples() const { return filterbank_latency_samples(cfg_.sample_rate); }
  std::uint64_t frames_encoded() const { return frame_counter_; }

  /// Raw (pre-quantization) parameters of the last encoded frame.
  const FrameParams& last_frame_params() const { return last_params_; }
  int last_param_bits() const { return last_param_bits_; }

  void reset() {
    for (auto& a : analyzers_) a.reset();
    dirac_.reset();
    downsampler_.reset();
    frame_counter_ = 0;
  }

  /// Encodes one 20 ms frame into exactly frame_bytes() bytes.
  std::vector<std::uint8_t> encode_frame(const AmbisonicFrame& pcm) {
    if (pcm.order < 1)
      throw ConfigError("encoder requires first-order input or higher");
    if (pcm.sample_rate != cfg_.sample_rate)
      throw ConfigError("sample rate mismatch");
    if (pcm.num_samples() != static_cast<std::size_t>(cfg_.frame_samples()))
      throw ConfigError("frame must hold exactly 20 ms of samples");

    const int m = analyzers_[0].bins();
    const BandGrouping bands = cfg_.bands();
    std::vector<std::vector<BandObservation>> slot_obs(kSlotsPerFrame);
    std::vector<std::vector<double>> slot_psi(kSlotsPerFrame);
    for (int s = 0; s < kSlotsPerFrame; ++s) {
      TfSlot slot;
      slot.ch.resize(4);
      for (int c = 0; c < 4; ++c) {
        std::span<const float> hop(
            pcm.channels[static_cast<std::size_t>(c)].data() +
                static_cast<std::size_t>(s) * m,
            static_cast<std::size_t>(m));
        slot.ch[static_cast<std::size_t>(c)] = analyzers_[static_cast<std::size_t>(c)].process_hop(hop);
      }
      slot_obs[static_cast<std::size_t>(s)] = band_observe(slot, bands);
      dirac_.push(slot_obs[static_cast<std::size_t>(s)]);
      slot_psi[static_cast<std::size_t>(s)] = dirac_.diffuseness_all();
    }
    last_params_ = downsampler_.downsample(slot_obs, slot_psi);

    const QuantizedParamFrame qp = encode_frame_params(last_params_, cfg_);
    BitWriter w;
    write_frame_params(w, qp);
    last_param_bits_ = static_cast<int>(w.bit_count());

    const auto tc = downmix(pcm, cfg_.tc);
    const int budget = cfg_.frame_bits() - last_param_bits_;
    encode_tc(tc, budget, cfg_.transport, w);
    ++frame_counter_;
    return w.finish(static_cast<std::size_t>(cfg_.frame_bytes()));
  }

 private:
  CodecConfig cfg_;
  std::vector<FilterbankAnalyzer> analyzers_;
  DiracAnalyzer dirac_;
  ParamDownsampler downsampler_;
  FrameParams last_params_;
  int last_param_bits_ = 0;
  std::uint64_t frame_counter_ = 0;
};

/// Frame-by-frame decoder producing HOA3 output.
class Decoder {
 public:
  explicit Decoder(const CodecConfig& cfg)
      : cfg_(cfg),
        synth_(SynthesisConfig::from_codec(cfg), cfg.bands()),
        decoder_dirac_(cfg.bands()),
        decoder_downsampler_(cfg.num_bands) {
    const int ndirect = static_cast<int>(direct_channel_set(cfg.tc).size());
    for (int c = 0; c < ndirect; ++c) tc_analyzers_.emplace_back(cfg.sample_rate);
    for (int c = 0; c < synth_.num_diffuse_channels(); ++c) {
      decorrelators_.emplace_back(c, cfg.sample_rate);
      diff_analyzers_.emplace_back(cfg.sample_rate);
    }
    for (int c = 0; c < num_channels(kOutputOrder); ++c)
      synthesizers_.emplace_back(cfg.sample_rate);
  }

  const CodecConfig& config() const { return cfg_; }
  int latency_samples() const { return filterbank_latency_samples(cfg_.sample_rate); }
  std::uint64_t frames_decoded() const { return frame_counter_; }
  long clamp_events() const { return synth_.clamp_events(); }

  /// Band parameters used for the last frame (after dequantization and, for
  /// 4-TC modes, decoder-side analysis of the low bands).
  const std::vector<SynthesisBandParams>& last_band_params() const {
    return last_params_;
  }
  /// Raw decoder-side analysis parameters of the last frame (4-TC modes).
  const std::optional<FrameParams>& last_decoder_analysis() const {
    return last_analysis_;
  }

  void reset() {
    for (auto& a : tc_analyzers_) a.reset();
    for (auto& a : diff_analyzers_) a.reset();
    for (auto& d : decorrelators_) d.reset();
    for (auto& s : synthesizers_) s.reset();
    synth_.reset();
    decoder_dirac_.reset();
    decoder_downsampler_.reset();
    frame_counter_ = 0;
  }

  /// Decodes one frame. Throws FrameError (with the stream frame index) on a
  /// malformed payload; the caller can then emit decode_silent_frame() to
  /// keep the output stream continuous.
  AmbisonicFrame decode_frame(const std::uint8_t* frame, std::size_t size) {
    if (size != static_cast<std::size_t>(cfg_.frame_bytes()))
      throw FrameError(frame_counter_, "frame size mismatch");
    BitReader r(frame, size);
    QuantizedParamFrame qp;
    try {
      qp = read_frame_params(r, cfg_);
    } catch (const Error& e) {
      throw FrameError(frame_counter_, e.what());
    }
    const int param_bits = static_cast<int>(r.bit_pos());
    const int budget = cfg_.frame_bits() - param_bits;
    std::vector<std::vector<float>> tc;
    try {
      tc = decode_tc(r, cfg_.transport, tc_count(cfg_.tc),
                     cfg_.frame_samples(), budget);
    } catch (const Error& e) {
      throw FrameError(frame_counter_, e.what());
    }
    return run_synthesis(tc, dequantize_frame_params(qp));
  }

  /// Advances all state by one frame of silence (used after frame errors).
  AmbisonicFrame decode_silent_frame() {
    std::vector<std::vector<float>> tc(
        static_cast<std::size_t>(tc_count(cfg_.tc)),
        std::vector<float>(static_cast<std::size_t>(cfg_.frame_samples()), 0.0f));
    std::vector<DecodedBandParams> coded(
        static_cast<std::size_t>(cfg_.num_coded_bands()));
    return run_synthesis(tc, coded);
  }

 private:
  AmbisonicFrame run_synthesis(const std::vector<std::vector<float>>& tc,
                               const std::vector<DecodedBandParams>& coded) {
    const int m = tc_analyzers_[0].bins();
    const auto foa = recover_foa(tc, cfg_.tc);

    // tiles of the transmitted channels
    TfFrame tc_tf;
    tc_tf.slots.resize(kSlotsPerFrame);
    for (int s = 0; s < kSlotsPerFrame; ++s) {
      tc_tf.slots[static_cast<std::size_t>(s)].ch.resize(foa.size());
      for (std::size_t c = 0; c < foa.size(); ++c) {
        std::span<const float> hop(foa[c].data() + static_cast<std::size_t>(s) * m,
                                   static_cast<std::size_t>(m));
        tc_tf.slots[static_cast<std::size_t>(s)].ch[c] =
            tc_analyzers_[c].process_hop(hop);
      }
    }

    // decorrelated omni tiles
    std::vector<TfFrame> diff_tf(decorrelators_.size());
    for (std::size_t d = 0; d < decorrelators_.size(); ++d) {
      const auto decorr = decorrelators_[d].process(foa[0]);
      diff_tf[d].slots.resize(kSlotsPerFrame);
      for (int s = 0; s < kSlotsPerFrame; ++s) {
        std::span<const float> hop(decorr.data() + static_cast<std::size_t>(s) * m,
                                   static_cast<std::size_t>(m));
        diff_tf[d].slots[static_cast<std::size_t>(s)].ch.push_back(
            diff_analyzers_[d].process_hop(hop));
      }
    }

    // decoder-side analysis of the low bands for 4-TC modes
    last_analysis_.reset();
    if (cfg_.tc == TcMode::Foa4) {
      const BandGrouping bands = cfg_.bands();
      std::vector<std::vector<BandObservation>> slot_obs(kSlotsPerFrame);
      std::vector<std::vector<double>> slot_psi(kSlotsPerFrame);
      for (int s = 0; s < kSlotsPerFrame; ++s) {
        slot_obs[static_cast<std::size_t>(s)] =
            band_observe(tc_tf.slots[static_cast<std::size_t>(s)], bands);
        decoder_dirac_.push(slot_obs[static_cast<std::size_t>(s)]);
        slot_psi[static_cast<std::size_t>(s)] = decoder_dirac_.diffuseness_all();
      }
      last_analysis_ = decoder_downsampler_.downsample(slot_obs, slot_psi);
    }

    // assemble per-band parameters
    const int b0 = cfg_.first_coded_band();
    last_params_.assign(static_cast<std::size_t>(cfg_.num_bands),
                        SynthesisBandParams{});
    for (int b = 0; b < cfg_.num_bands; ++b) {
      SynthesisBandParams& p = last_params_[static_cast<std::size_t>(b)];
      if (b >= b0) {
        const auto& c = coded[static_cast<std::size_t>(b - b0)];
        p.diffuseness = c.diffuseness;
        p.doa = c.doa;
      } else {
        p.diffuseness = last_analysis_->diffuseness[static_cast<std::size_t>(b)];
        p.doa = last_analysis_->doa[static_cast<std::size_t>(b)];
      }
    }

    const TfFrame hoa = synth_.synthesize(tc_tf, diff_tf, last_params_);

    AmbisonicFrame out = make_ambisonic_frame(
        kOutputOrder, cfg_.sample_rate,
        static_cast<std::size_t>(cfg_.frame_samples()));
    for (int c = 0; c < num_channels(kOutputOrder); ++c) {
      for (int s = 0; s < kSlotsPerFrame; ++s) {
        const auto hop = synthesizers_[static_cast<std::size_t>(c)].process_slot(
            hoa.slots[static_cast<std::size_t>(s)].ch[static_cast<std::size_t>(c)]);
        std::copy(hop.begin(), hop.end(),
                  out.channels[static_cast<std::size_t>(c)].begin() +
                      static_cast<std::size_t>(s) * m);
      }
    }
    ++frame_counter_;
    return out;
  }

  CodecConfig cfg_;
  std::vector<FilterbankAnalyzer> tc_analyzers_;
  std::vector<Decorrelator> decorrelators_;
  std::vector<FilterbankAnalyzer> diff_analyzers_;
  std::vector<FilterbankSynthesizer> synthesizers_;
  HoaSynthesizer synth_;
  DiracAnalyzer decoder_dirac_;
  ParamDownsampler decoder_downsampler_;
  std::vector<SynthesisBandParams> last_params_;
  std::optional<FrameParams> last_analysis_;
  std::uint64_t frame_counter_ = 0;
};

/// Whole-signal convenience API ------------------------------------------

struct EncodeStats {
  std::uint64_t frames = 0;
  long param_bits_total = 0;
  int param_bits_max = 0;
  int cap_bits = 0;
  double param_kbps_mean = 0.0;
  double tc_kbps_mean = 0.0;
};

/// Encodes a whole signal (zero-padded to whole frames) into a muxed stream.
inline std::vector<std::uint8_t> encode_stream(const AmbisonicFrame& input,
                                               const CodecConfig& cfg,
                                               EncodeStats* stats = nullptr) {
  Encoder enc(cfg);
  const std::size_t fs = static_cast<std::size_t>(cfg.frame_samples());
  const std::size_t nframes = (input.num_samples() + fs - 1) / fs;
  std::vector<std::vector<std::uint8_t>> frames;
  frames.reserve(nframes);
  EncodeStats st;
  st.cap_bits = cfg.cap_bits;
  AmbisonicFrame chunk =
      make_ambisonic_frame(input.order, input.sample_rate, fs);
  for (std::size_t f = 0; f < nframes; ++f) {
    for (std::size_t c = 0; c < input.channels.size(); ++c) {
      auto& dst = chunk.channels[c];
      std::fill(dst.begin(), dst.end(), 0.0f);
      const std::size_t off = f * fs;
      const std::size_t n = std::min(fs, input.num_samples() - off);
      std::copy(input.channels[c].begin() + static_cast<std::ptrdiff_t>(off),
                input.channels[c].begin() + static_cast<std::ptrdiff_t>(off + n),
                dst.begin());
    }
    frames.push_back(enc.encode_frame(chunk));
    st.param_bits_total += enc.last_param_bits();
    st.param_bits_max = std::max(st.param_bits_max, enc.last_param_bits());
  }
  st.frames = nframes;
  if (nframes > 0) {
    st.param_kbps_mean = st.param_bits_total * kFramesPerSecond /
                         (1000.0 * static_cast<double>(nframes));
    st.tc_kbps_mean = cfg.bitrate / 1000.0 - st.param_kbps_mean;
  }
  if (stats) *stats = st;
  return mux(header_from_config(cfg), frames);
}

struct StreamDecodeResult {
  CodecConfig config;
  AmbisonicFrame pcm;
  std::vector<std::size_t> failed_frames;
  long clamp_events = 0;
};

/// Decodes a muxed stream; frames that fail to parse come out as silence and
/// their indices are reported.
inline StreamDecodeResult decode_stream(const std::uint8_t* data, std::size_t size) {
  const DemuxResult d = demux(data, size);
  StreamDecodeResult res{config_from_header(d.header), AmbisonicFrame{}, {}, 0};
  Decoder dec(res.config);
  const std::size_t fs = static_cast<std::size_t>(res.config.frame_samples());
  res.pcm = make_ambisonic_frame(kOutputOrder, res.config.sample_rate,
                                 d.frames.size() * fs);
  for (std::size_t f = 0; f < d.frames.size(); ++f) {
    AmbisonicFrame out;
    try {
      out = dec.decode_frame(d.frames[f].data(), d.frames[f].size());
    } catch (const FrameError&) {
      res.failed_frames.push_back(f);
      out = dec.decode_silent_frame();
    }
    for (std::size_t c = 0; c < out.channels.size(); ++c)
      std::copy(out.channels[c].begin(), out.channels[c].end(),
                res.pcm.channels[c].begin() + static_cast<std::ptrdiff_t>(f * fs));
  }
  res.clamp_events = dec.clamp_events();
  return res;
}

inline StreamDecodeResult decode_stream(const std::vector<std::uint8_t>& bytes) {
  return decode_stream(bytes.data(), bytes.size());
}

}  // namespace adrc

#endif  // ADRC_CODEC_HPP
