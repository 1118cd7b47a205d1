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

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "adrc/adrc.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitStream = 3;

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw adrc::FormatError("cannot open " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw adrc::FormatError("cannot open " + path + " for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
}

int order_for_channels(std::size_t channels) {
  switch (channels) {
    case 4: return 1;
    case 9: return 2;
    case 16: return 3;
    default:
      throw adrc::ConfigError("expected 4/9/16 channels, got " +
                              std::to_string(channels));
  }
}

adrc::TransportMode parse_transport(const std::string& s) {
  if (s == "passthrough") return adrc::TransportMode::PassThrough;
  if (s == "scalarq") return adrc::TransportMode::ScalarQ;
  throw adrc::ConfigError("transport must be passthrough or scalarq");
}

int run_encode(const std::string& in, const std::string& out, int bitrate,
               const std::string& tc_mode, const std::string& transport) {
  adrc::WavData wav;
  adrc::CodecConfig cfg;
  try {
    wav = adrc::read_wav(in);
    const int order = order_for_channels(wav.channels.size());
    int tc_override = 0;
    if (tc_mode != "auto") tc_override = std::stoi(tc_mode);
    cfg = adrc::make_config(bitrate, wav.sample_rate, order,
                            parse_transport(transport), tc_override);
  } catch (const adrc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  adrc::AmbisonicFrame input;
  input.order = order_for_channels(wav.channels.size());
  input.sample_rate = wav.sample_rate;
  input.channels = std::move(wav.channels);

  adrc::EncodeStats stats;
  const auto bytes = adrc::encode_stream(input, cfg, &stats);
  write_file(out, bytes);

  std::cout << "frames=" << stats.frames << '\n'
            << "frame_bytes=" << cfg.frame_bytes() << '\n'
            << "tc_count=" << adrc::tc_count(cfg.tc) << '\n'
            << "param_cap_bits=" << stats.cap_bits << '\n'
            << "param_bits_max=" << stats.param_bits_max << '\n'
            << "param_kbps_mean=" << stats.param_kbps_mean << '\n'
            << "tc_kbps_mean=" << stats.tc_kbps_mean << '\n'
            << "stream_bytes=" << bytes.size() << '\n';
  return 0;
}

int run_decode(const std::string& in, const std::string& out) {
  std::vector<std::uint8_t> bytes;
  try {
    bytes = read_file(in);
  } catch (const adrc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    const auto res = adrc::decode_stream(bytes);
    adrc::WavData wav;
    wav.sample_rate = res.config.sample_rate;
    wav.channels = res.pcm.channels;
    adrc::write_wav(out, wav);
    std::cout << "frames=" << res.pcm.num_samples() / static_cast<std::size_t>(
                                  res.config.frame_samples())
              << '\n'
              << "failed_frames=" << res.failed_frames.size() << '\n'
              << "clamp_events=" << res.clamp_events << '\n';
    for (std::size_t i : res.failed_frames)
      std::cerr << "warning: frame " << i << " decoded as silence\n";
    return 0;
  } catch (const adrc::FrameError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStream;
  } catch (const adrc::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStream;
  }
}

int run_inspect(const std::string& in) {
  std::vector<std::uint8_t> bytes;
  try {
    bytes = read_file(in);
  } catch (const adrc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  adrc::DemuxResult d;
  adrc::CodecConfig cfg;
  try {
    d = adrc::demux(bytes);
    cfg = adrc::config_from_header(d.header);
  } catch (const adrc::FrameError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStream;
  } catch (const adrc::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStream;
  }
  std::cout << "sample_rate=" << d.header.sample_rate << '\n'
            << "bitrate=" << d.header.bitrate << '\n'
            << "tc_count=" << adrc::tc_count(d.header.tc) << '\n'
            << "transport="
            << (d.header.transport == adrc::TransportMode::PassThrough
                    ? "passthrough"
                    : "scalarq")
            << '\n'
            << "input_order=" << d.header.input_order << '\n'
            << "bands=" << d.header.num_bands << '\n'
            << "frames=" << d.frames.size() << '\n';
  const int b0 = cfg.first_coded_band();
  for (std::size_t f = 0; f < d.frames.size(); ++f) {
    try {
      adrc::BitReader r(d.frames[f]);
      const auto qp = adrc::read_frame_params(r, cfg);
      const auto bp = adrc::dequantize_frame_params(qp);
      for (std::size_t b = 0; b < bp.size(); ++b) {
        std::printf("frame=%zu band=%zu psi=%.2f doa_bits=%d", f,
                    b + static_cast<std::size_t>(b0), bp[b].diffuseness,
                    qp.doa_bits[b]);
        for (const auto& doa : bp[b].doa)
          std::printf(" (%.1f,%.1f)", doa.azimuth * 180.0 / adrc::kPi,
                      doa.elevation * 180.0 / adrc::kPi);
        std::printf("\n");
      }
    } catch (const adrc::Error& e) {
      std::cerr << "error: frame " << f << ": " << e.what() << '\n';
      return kExitStream;
    }
  }
  return 0;
}

adrc::GeneratedScene make_named_scene(const std::string& name, double seconds,
                                      int sample_rate, std::uint32_t seed,
                                      int order) {
  adrc::SceneSpec spec;
  spec.seconds = seconds;
  spec.sample_rate = sample_rate;
  spec.seed = seed;
  if (name == "plane") {
    spec.sources.push_back({adrc::make_direction(0.6, -0.25), 1.0});
  } else if (name == "isotropic") {
    spec.diffuse_level = 1.0;
  } else if (name.rfind("mix=", 0) == 0) {
    const double r = std::stod(name.substr(4));
    spec.sources.push_back({adrc::make_direction(0.6, -0.25),
                            std::sqrt(std::max(0.0, 1.0 - r))});
    spec.diffuse_level = std::sqrt(std::max(0.0, r));
  } else {
    throw adrc::ConfigError("scene must be plane, isotropic or mix=<ratio>");
  }
  return adrc::gen_scene(spec, order);
}

int run_eval(const std::string& sweep_out, const std::string& scene,
             int bitrate, const std::string& transport, double seconds,
             unsigned seed, const std::string& report_out,
             const std::string& ratios_arg) {
  try {
    if (!sweep_out.empty()) {
      std::vector<double> ratios;
      std::stringstream ss(ratios_arg);
      std::string tok;
      while (std::getline(ss, tok, ','))
        if (!tok.empty()) ratios.push_back(std::stod(tok));
      const auto rows = adrc::doa_error_vs_diffuseness(
          ratios, 48000, seconds, static_cast<std::uint32_t>(seed));
      const std::string csv = adrc::sweep_csv(ratios.empty() ? std::vector<adrc::SweepRow>{} : rows);
      std::ofstream f(sweep_out);
      f << csv;
      std::cout << csv;
      return 0;
    }
    if (!scene.empty()) {
      const auto sc = make_named_scene(scene, seconds, 48000,
                                       static_cast<std::uint32_t>(seed), 3);
      const auto cfg = adrc::make_config(bitrate, 48000, 3,
                                         parse_transport(transport));
      const auto rep = adrc::codec_metrics(sc, cfg);
      const std::string kv = adrc::metric_report_kv(rep);
      std::cout << kv;
      if (!report_out.empty()) {
        std::ofstream f(report_out);
        f << "doa_mean_deg,doa_std_deg,diffuseness_mae,order0,order1,order2,"
             "order3,energy_ratio_model,energy_ratio_omni,clamp_events\n"
          << rep.doa_mean_deg << ',' << rep.doa_std_deg << ','
          << rep.diffuseness_mae << ',' << rep.order_power_ratio[0] << ','
          << rep.order_power_ratio[1] << ',' << rep.order_power_ratio[2] << ','
          << rep.order_power_ratio[3] << ',' << rep.energy_ratio_model << ','
          << rep.energy_ratio_omni << ',' << rep.clamp_events << '\n';
      }
      return 0;
    }
    std::cerr << "error: eval needs --sweep or --scene\n";
    return kExitUsage;
  } catch (const adrc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametric ambisonic codec"};
  app.require_subcommand(1);

  std::string in, out, tc_mode = "auto", transport = "scalarq";
  int bitrate = 64000;

  auto* enc = app.add_subcommand("encode", "Encode an AmbiX WAV file");
  enc->add_option("input", in, "input WAV (4/9/16 ch float)")->required();
  enc->add_option("output", out, "output .adc stream")->required();
  enc->add_option("--bitrate", bitrate, "total bitrate in bps")->required();
  enc->add_option("--tc-mode", tc_mode, "transport channels: auto|1|2|4");
  enc->add_option("--transport", transport, "passthrough|scalarq");

  auto* dec = app.add_subcommand("decode", "Decode a stream to HOA3 WAV");
  dec->add_option("input", in, "input .adc stream")->required();
  dec->add_option("output", out, "output 16-channel WAV")->required();

  auto* ins = app.add_subcommand("inspect", "Dump header and frame parameters");
  ins->add_option("input", in, "input .adc stream")->required();

  std::string sweep_out, scene, report_out;
  std::string ratios = "0,0.2,0.4,0.6,0.8,0.9";
  double seconds = 1.0;
  unsigned seed = 1;
  auto* ev = app.add_subcommand("eval", "Objective evaluation harness");
  ev->add_option("--sweep", sweep_out, "write DOA-error-vs-diffuseness CSV");
  ev->add_option("--scene", scene, "plane|isotropic|mix=<ratio>");
  ev->add_option("--config", bitrate, "bitrate for --scene runs");
  ev->add_option("--transport", transport, "passthrough|scalarq");
  ev->add_option("--seconds", seconds, "scene duration");
  ev->add_option("--seed", seed, "scene RNG seed");
  ev->add_option("--out", report_out, "write metric report CSV");
  ev->add_option("--ratios", ratios, "sweep mix ratios (comma separated)");

  CLI11_PARSE(app, argc, argv);

  if (enc->parsed()) return run_encode(in, out, bitrate, tc_mode, transport);
  if (dec->parsed()) return run_decode(in, out);
  if (ins->parsed()) return run_inspect(in);
  if (ev->parsed())
    return run_eval(sweep_out, scene, bitrate, transport, seconds, seed,
                    report_out, ratios);
  return kExitUsage;
}
