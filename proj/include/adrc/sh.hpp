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

#ifndef ADRC_SH_HPP
#define ADRC_SH_HPP

#include <cmath>
#include <vector>

#include "adrc/common.hpp"
#include "adrc/direction.hpp"

namespace adrc {

inline constexpr int kMaxShOrder = 3;

/// ACN channel index for spherical-harmonic order l and degree m.
inline constexpr int acn_index(int l, int m) { return l * l + l + m; }

inline constexpr int acn_order(int acn) {
  int l = 0;
  while ((l + 1) * (l + 1) <= acn) ++l;
  return l;
}

inline constexpr int num_channels(int order) { return (order + 1) * (order + 1); }

/// Real SN3D spherical-harmonic values in ACN order.
struct ShVector {
  int order = 0;
  std::vector<double> values;
};

/// Evaluates the real SN3D-normalized spherical harmonics up to `order` at a
/// direction, in ACN channel order (W, Y, Z, X, V, T, R, S, U, ...). The
/// formulas are the explicit AmbiX polynomials, hard-coded up to order 3.
inline ShVector sh_eval(const Direction& dir, int order) {
  if (order < 0 || order > kMaxShOrder)
    throw ConfigError("unsupported spherical-harmonic order " + std::to_string(order));

  const double sa = std::sin(dir.azimuth), ca = std::cos(dir.azimuth);
  const double se = std::sin(dir.elevation), ce = std::cos(dir.elevation);

  ShVector sh;
  sh.order = order;
  sh.values.resize(static_cast<std::size_t>(num_channels(order)));
  sh.values[0] = 1.0;  // Y_0^0
  if (order == 0) return sh;

  sh.values[1] = sa * ce;  // Y
  sh.values[2] = se;       // Z
  sh.values[3] = ca * ce;  // X
  if (order == 1) return sh;

  const double s2a = 2.0 * sa * ca;
  const double c2a = ca * ca - sa * sa;
  const double s2e = 2.0 * se * ce;
  const double ce2 = ce * ce;
  const double sqrt3_2 = std::sqrt(3.0) / 2.0;
  sh.values[4] = sqrt3_2 * s2a * ce2;            // V
  sh.values[5] = sqrt3_2 * sa * s2e;             // T
  sh.values[6] = 0.5 * (3.0 * se * se - 1.0);    // R
  sh.values[7] = sqrt3_2 * ca * s2e;             // S
  sh.values[8] = sqrt3_2 * c2a * ce2;            // U
  if (order == 2) return sh;

  const double s3a = sa * (2.0 * c2a + 1.0);
  const double c3a = ca * (2.0 * c2a - 1.0);
  const double ce3 = ce2 * ce;
  const double se2 = se * se;
  sh.values[9] = std::sqrt(10.0) / 4.0 * s3a * ce3;
  sh.values[10] = std::sqrt(15.0) / 2.0 * s2a * se * ce2;
  sh.values[11] = std::sqrt(6.0) / 4.0 * sa * ce * (5.0 * se2 - 1.0);
  sh.values[12] = 0.5 * se * (5.0 * se2 - 3.0);
  sh.values[13] = std::sqrt(6.0) / 4.0 * ca * ce * (5.0 * se2 - 1.0);
  sh.values[14] = std::sqrt(15.0) / 2.0 * c2a * se * ce2;
  sh.values[15] = std::sqrt(10.0) / 4.0 * c3a * ce3;
  return sh;
}

}  // namespace adrc

#endif  // ADRC_SH_HPP
