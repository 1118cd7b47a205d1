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

#ifndef ADRC_EVAL_HPP
#define ADRC_EVAL_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "adrc/ambisonic.hpp"
#include "adrc/codec.hpp"
#include "adrc/common.hpp"
#include "adrc/dirac.hpp"
#include "adrc/direction.hpp"
#include "adrc/filterbank.hpp"
#include "adrc/sh.hpp"

namespace adrc {

// Synthetic scenes and objective metrics: directional accuracy versus
// diffuseness, energy bookkeeping and diffuse-field order profiles.

/// Deterministic standard-normal sampler (Box-Muller on raw engine output,
/// independent of library distribution internals).
class GaussianSource {
 public:
  explicit GaussianSource(std::uint32_t seed) : rng_(seed) {}

  double next() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

  std::vector<float> noise(std::size_t n, double rms = 1.0) {
    std::vector<float> out(n);
    for (auto& v : out) v = static_cast<float>(next() * rms);
    return out;
  }

  double uniform() {
    return (rng_() >> 11) * (1.0 / 9007199254740992.0);  // 53-bit mantissa
  }

 private:
  std::mt19937_64 rng_;
  bool have_ = false;
  double spare_ = 0.0;
};

inline Direction random_direction(GaussianSource& g) {
  const double az = (g.uniform() * 2.0 - 1.0) * kPi;
  const double el = std::asin(g.uniform() * 2.0 - 1.0);
  return make_direction(az, el);
}

/// 120-point near-uniform spherical direction set (Fibonacci spiral). The
/// per-channel SN3D variances of this set match 1/(2l+1) to within 0.01 dB
/// for orders up to 3, which is what the diffuse-field oracles rely on.
inline std::vector<Direction> spherical_design_120() {
  constexpr int n = 120;
  std::vector<Direction> dirs;
  dirs.reserve(n);
  const double golden = kPi * (1.0 + std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double el = std::asin(z);
    const double az = wrap_angle(golden * (i + 0.5));
    dirs.push_back(make_direction(az, el));
  }
  return dirs;
}

struct SceneComponent {
  Direction dir;
  double gain = 1.0;
};

/// A synthetic test scene: panned white-noise sources plus an isotropic
/// field built from 120 independent noise sources on the spherical set.
struct SceneSpec {
  std::vector<SceneComponent> sources;
  double diffuse_level = 0.0;  // rms of the summed isotropic field's W
  double seconds = 1.0;
  int sample_rate = 48000;
  std::uint32_t seed = 1;
};

struct GeneratedScene {
  AmbisonicFrame frame;
  double direct_power = 0.0;   // W-channel power of the directional part
  double diffuse_power = 0.0;  // W-channel power of the isotropic part
  std::vector<Direction> true_dirs;
  std::vector<double> source_gains;

  /// Analytic diffuseness: diffuse power over total power.
  double true_diffuseness() const {
    const double t = direct_power + diffuse_power;
    return t > 0.0 ? diffuse_power / t : 1.0;
  }

  /// Energy-weighted mean source direction (the expected intensity
  /// direction for uncorrelated sources).
  Direction true_doa() const {
    Vec3 sum{0, 0, 0};
    for (std::size_t i = 0; i < true_dirs.size(); ++i) {
      const Vec3 u = to_unit_vector(true_dirs[i]);
      const double w = source_gains[i] * source_gains[i];
      for (int c = 0; c < 3; ++c) sum[c] += w * u[c];
    }
    return to_direction(sum);
  }
};

inline GeneratedScene gen_scene(const SceneSpec& spec, int order) {
  if (spec.sources.empty() && spec.diffuse_level <= 0.0)
    throw ConfigError("scene needs at least one component");
  const std::size_t n = static_cast<std::size_t>(spec.seconds * spec.sample_rate);
  GeneratedScene out;
  out.frame = make_ambisonic_frame(order, spec.sample_rate, n);
  GaussianSource g(spec.seed);
  for (const auto& s : spec.sources) {
    const auto mono = g.noise(n, s.gain);
    pan_source_into(out.frame, mono, s.dir, 1.0f);
    out.true_dirs.push_back(s.dir);
    out.source_gains.push_back(s.gain);
    out.direct_power += s.gain * s.gain;
  }
  if (spec.diffuse_level > 0.0) {
    const auto dirs = spherical_design_120();
    const double per_source = spec.diffuse_level / std::sqrt(120.0);
    for (const auto& d : dirs) {
      const auto mono = g.noise(n, per_source);
      pan_source_into(out.frame, mono, d, 1.0f);
    }
    out.diffuse_power = spec.diffuse_level * spec.diffuse_level;
  }
  return out;
}

/// Slot-rate analysis of a scene's FOA channels (fresh analyzer states).
struct AnalysisTrack {
  std::vector<std::vector<BandObservation>> obs;  // [slot][band]
  std::vector<std::vector<double>> psi;           // [slot][band]
  int num_bands = 0;
};

inline AnalysisTrack analyze_scene(const AmbisonicFrame& frame,
                                   const BandGrouping& bands) {
  AnalysisTrack track;
  track.num_bands = bands.num_bands();
  std::vector<FilterbankAnalyzer> an;
  for (int c = 0; c < 4; ++c) an.emplace_back(frame.sample_rate);
  DiracAnalyzer dirac(bands);
  const int m = an[0].bins();
  const std::size_t slots = frame.num_samples() / static_cast<std::size_t>(m);
  for (std::size_t s = 0; s < slots; ++s) {
    TfSlot slot;
    slot.ch.resize(4);
    for (int c = 0; c < 4; ++c) {
      std::span<const float> hop(
          frame.channels[static_cast<std::size_t>(c)].data() + s * static_cast<std::size_t>(m),
          static_cast<std::size_t>(m));
      slot.ch[static_cast<std::size_t>(c)] = an[static_cast<std::size_t>(c)].process_hop(hop);
    }
    track.obs.push_back(band_observe(slot, bands));
    dirac.push(track.obs.back());
    track.psi.push_back(dirac.diffuseness_all());
  }
  return track;
}

/// One row of the DOA-error-vs-diffuseness sweep.
struct SweepRow {
  double psi_lo = 0.0, psi_hi = 0.0;
  std::size_t count = 0;
  double mean_deg = 0.0;
  double std_deg = 0.0;
};

/// Runs full analysis over mixed direct/diffuse scenes and accumulates the
/// central angle between estimated and true DOA, binned by the estimated
/// diffuseness at each subframe.
inline std::vector<SweepRow> doa_error_vs_diffuseness(
    const std::vector<double>& mix_ratios, int sample_rate, double seconds,
    std::uint32_t seed, int scenes_per_ratio = 2) {
  const std::vector<double> edges{0.0, 0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<std::vector<double>> samples(edges.size() - 1);
  const BandGrouping bands = make_bands(sample_rate, 5);
  GaussianSource dirgen(seed);
  for (double ratio : mix_ratios) {
    for (int t = 0; t < scenes_per_ratio; ++t) {
      SceneSpec spec;
      spec.sample_rate = sample_rate;
      spec.seconds = seconds;
      spec.seed = seed + static_cast<std::uint32_t>(t) * 7919u +
                  static_cast<std::uint32_t>(ratio * 1000.0);
      const Direction dir = random_direction(dirgen);
      spec.sources.push_back({dir, std::sqrt(std::max(0.0, 1.0 - ratio))});
      spec.diffuse_level = std::sqrt(ratio);
      const GeneratedScene scene = gen_scene(spec, 1);
      const AnalysisTrack track = analyze_scene(scene.frame, bands);
      const int nslots = static_cast<int>(track.obs.size());
      for (int s0 = kDiffusenessWindowSlots; s0 + kSlotsPerSubframe <= nslots;
           s0 += kSlotsPerSubframe) {
        for (int b = 0; b < bands.num_bands(); ++b) {
          Vec3 isum{0, 0, 0};
          double e = 0.0;
          for (int j = 0; j < kSlotsPerSubframe; ++j) {
            const auto& o = track.obs[static_cast<std::size_t>(s0 + j)]
                                     [static_cast<std::size_t>(b)];
            for (int c = 0; c < 3; ++c) isum[c] += o.intensity[c];
            e += o.energy;
          }
          if (e <= kEnergyFloor || norm(isum) <= kDoaHoldRelative * e) continue;
          const Direction est = direction_from_intensity(isum);
          const double err = central_angle_deg(est, dir);
          const double psi = track.psi[static_cast<std::size_t>(s0 +
                                        kSlotsPerSubframe - 1)]
                                      [static_cast<std::size_t>(b)];
          for (std::size_t bin = 0; bin + 1 < edges.size(); ++bin) {
            if (psi <= edges[bin + 1] || bin + 2 == edges.size()) {
              samples[bin].push_back(err);
              break;
            }
          }
        }
      }
    }
  }
  std::vector<SweepRow> rows;
  for (std::size_t bin = 0; bin + 1 < edges.size(); ++bin) {
    SweepRow r;
    r.psi_lo = edges[bin];
    r.psi_hi = edges[bin + 1];
    r.count = samples[bin].size();
    if (r.count > 0) {
      double m = 0.0;
      for (double v : samples[bin]) m += v;
      m /= static_cast<double>(r.count);
      double var = 0.0;
      for (double v : samples[bin]) var += (v - m) * (v - m);
      var /= static_cast<double>(r.count);
      r.mean_deg = m;
      r.std_deg = std::sqrt(var);
    }
    rows.push_back(r);
  }
  return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "psi_lo,psi_hi,count,central_angle_mean_deg,central_angle_std_deg\n";
  for (const auto& r : rows)
    os << r.psi_lo << ',' << r.psi_hi << ',' << r.count << ',' << r.mean_deg
       << ',' << r.std_deg << '\n';
  return os.str();
}

/// Objective codec report for one scene/configuration.
struct MetricReport {
  double doa_mean_deg = 0.0;
  double doa_std_deg = 0.0;
  std::vector<double> band_doa_mean_deg;
  std::vector<double> band_doa_std_deg;
  double diffuseness_mae = 0.0;
  std::array<double, 4> order_power_ratio{0, 0, 0, 0};  // vs 1/(2l+1) profile
  double energy_ratio_model = 0.0;   // decoded total vs the synthesis-model prediction
  double energy_ratio_omni = 0.0;   // decoded total vs (H+1) x decoded omni power
  long clamp_events = 0;
  std::uint64_t frames = 0;
};

inline std::string metric_report_kv(const MetricReport& r) {
  std::ostringstream os;
  os << "frames=" << r.frames << '\n'
     << "doa_mean_deg=" << r.doa_mean_deg << '\n'
     << "doa_std_deg=" << r.doa_std_deg << '\n';
  for (std::size_t b = 0; b < r.band_doa_mean_deg.size(); ++b)
    os << "band" << b << "_doa_mean_deg=" << r.band_doa_mean_deg[b]
       << " band" << b << "_doa_std_deg=" << r.band_doa_std_deg[b] << '\n';
  os << "diffuseness_mae=" << r.diffuseness_mae << '\n';
  for (int l = 0; l <= 3; ++l)
    os << "order" << l << "_power_ratio=" << r.order_power_ratio[static_cast<std::size_t>(l)]
       << '\n';
  os << "energy_ratio_model=" << r.energy_ratio_model << '\n'
     << "energy_ratio_omni=" << r.energy_ratio_omni << '\n'
     << "clamp_events=" << r.clamp_events << '\n';
  return os.str();
}

/// Encodes and decodes a generated scene (PassThrough transport unless the
/// config says otherwise) and measures parameter accuracy plus the energy
/// bookkeeping of the synthesis model.
inline MetricReport codec_metrics(const GeneratedScene& scene, CodecConfig cfg) {
  MetricReport rep;
  Encoder enc(cfg);
  Decoder dec(cfg);
  const std::size_t fs = static_cast<std::size_t>(cfg.frame_samples());
  const std::size_t nframes = scene.frame.num_samples() / fs;
  rep.frames = nframes;
  if (nframes == 0) return rep;

  const int skip_frames = 3;  // moving-average fill + latency
  AmbisonicFrame chunk =
      make_ambisonic_frame(scene.frame.order, scene.frame.sample_rate, fs);

  std::vector<double> ch_energy(16, 0.0);
  double w_hat_energy = 0.0;    // decoded TC omni power (= input W, passthrough)
  double model_target = 0.0;    // model prediction of the decoded total
  std::vector<double> doa_sum(static_cast<std::size_t>(cfg.num_bands), 0.0);
  std::vector<double> doa_sq(static_cast<std::size_t>(cfg.num_bands), 0.0);
  std::vector<std::size_t> doa_n(static_cast<std::size_t>(cfg.num_bands), 0);
  double psi_err = 0.0;
  std::size_t psi_n = 0;
  const int hl = cfg.diffuse_order;
  const double true_psi = scene.true_diffuseness();
  const Direction target_doa = scene.true_doa();
  const bool directional = !scene.true_dirs.empty() && true_psi < 0.5;

  for (std::size_t f = 0; f < nframes; ++f) {
    for (std::size_t c = 0; c < scene.frame.channels.size(); ++c)
      std::copy(scene.frame.channels[c].begin() + static_cast<std::ptrdiff_t>(f * fs),
                scene.frame.channels[c].begin() + static_cast<std::ptrdiff_t>((f + 1) * fs),
                chunk.channels[c].begin());
    const auto bytes = enc.encode_frame(chunk);
    const AmbisonicFrame out = dec.decode_frame(bytes.data(), bytes.size());
    if (f < static_cast<std::size_t>(skip_frames)) continue;

    for (int c = 0; c < 16; ++c)
      for (float v : out.channels[static_cast<std::size_t>(c)])
        ch_energy[static_cast<std::size_t>(c)] += static_cast<double>(v) * v;
    for (float v : chunk.channels[0]) w_hat_energy += static_cast<double>(v) * v;

    // model target from the band parameters actually used by the decoder,
    // weighted by the frame's W power (white-ish scenes: flat per bin)
    double frame_w = 0.0;
    for (float v : chunk.channels[0]) frame_w += static_cast<double>(v) * v;
    const auto& bp = dec.last_band_params();
    const BandGrouping bands = cfg.bands();
    const int bins = filterbank_bins(cfg.sample_rate);
    double factor = 0.0;
    for (int b = 0; b < bands.num_bands(); ++b) {
      const double psi = bp[static_cast<std::size_t>(b)].diffuseness;
      const double g2 =
          std::max(0.0, 1.0 - psi * ((kOutputOrder + 1.0) / (hl + 1.0) - 1.0));
      const double f_band =
          g2 * (hl + 1) + (kOutputOrder - hl) * (1.0 - psi);
      factor += f_band * (bands.end(b) - bands.begin(b)) / static_cast<double>(bins);
    }
    model_target += frame_w * factor;

    // parameter accuracy vs ground truth
    const auto& params = enc.last_frame_params();
    for (int b = 0; b < params.num_bands(); ++b) {
      psi_err += std::abs(params.diffuseness[static_cast<std::size_t>(b)] - true_psi);
      ++psi_n;
      if (directional) {
        for (const auto& d : params.doa[static_cast<std::size_t>(b)]) {
          const double err = central_angle_deg(d, target_doa);
          doa_sum[static_cast<std::size_t>(b)] += err;
          doa_sq[static_cast<std::size_t>(b)] += err * err;
          ++doa_n[static_cast<std::size_t>(b)];
        }
      }
    }
  }

  double total = 0.0;
  for (double e : ch_energy) total += e;
  if (total <= 0.0) return rep;  // silence: all-zero report

  for (int l = 0; l <= 3; ++l) {
    double oe = 0.0;
    for (int m = -l; m <= l; ++m)
      oe += ch_energy[static_cast<std::size_t>(acn_index(l, m))];
    // mean channel power of the order vs the SN3D diffuse profile
    // 1/(2l+1) x W power; equivalently order total over W total
    rep.order_power_ratio[static_cast<std::size_t>(l)] =
        oe / std::max(1e-30, ch_energy[0]);
  }
  rep.energy_ratio_model = total / std::max(1e-30, model_target);
  rep.energy_ratio_omni = total / std::max(1e-30, (kOutputOrder + 1.0) * ch_energy[0]);
  rep.band_doa_mean_deg.assign(static_cast<std::size_t>(cfg.num_bands), 0.0);
  rep.band_doa_std_deg.assign(static_cast<std::size_t>(cfg.num_bands), 0.0);
  double all_sum = 0.0, all_sq = 0.0;
  std::size_t all_n = 0;
  for (int b = 0; b < cfg.num_bands; ++b) {
    const auto bi = static_cast<std::size_t>(b);
    if (doa_n[bi] == 0) continue;
    const double m = doa_sum[bi] / static_cast<double>(doa_n[bi]);
    rep.band_doa_mean_deg[bi] = m;
    rep.band_doa_std_deg[bi] = std::sqrt(
        std::max(0.0, doa_sq[bi] / static_cast<double>(doa_n[bi]) - m * m));
    all_sum += doa_sum[bi];
    all_sq += doa_sq[bi];
    all_n += doa_n[bi];
  }
  if (all_n > 0) {
    rep.doa_mean_deg = all_sum / static_cast<double>(all_n);
    rep.doa_std_deg = std::sqrt(
        std::max(0.0, all_sq / static_cast<double>(all_n) -
                          rep.doa_mean_deg * rep.doa_mean_deg));
  }
  if (psi_n > 0) rep.diffuseness_mae = psi_err / static_cast<double>(psi_n);
  rep.clamp_events = dec.clamp_events();
  return rep;
}

}  // namespace adrc

#endif  // ADRC_EVAL_HPP
