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

#ifndef ADRC_DIRECTION_HPP
#define ADRC_DIRECTION_HPP

#include <algorithm>
#include <array>
#include <cmath>

#include "adrc/common.hpp"

namespace adrc {

/// A direction on the unit sphere. Azimuth is measured counterclockwise from
/// +X towards +Y in [-pi, pi), elevation upwards from the horizontal plane in
/// [-pi/2, pi/2]. At the poles the azimuth is canonicalized to 0.
struct Direction {
  double azimuth = 0.0;
  double elevation = 0.0;
};

/// Wraps an angle into [-pi, pi).
inline double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a - kPi;
}

/// Builds a canonical Direction from arbitrary azimuth/elevation values.
inline Direction make_direction(double azimuth, double elevation) {
  Direction d;
  d.elevation = std::clamp(elevation, -kPi / 2.0, kPi / 2.0);
  if (std::abs(d.elevation) >= kPi / 2.0 - 1e-12) {
    d.azimuth = 0.0;
  } else {
    d.azimuth = wrap_angle(azimuth);
  }
  return d;
}

using Vec3 = std::array<double, 3>;

inline Vec3 to_unit_vector(const Direction& d) {
  const double ce = std::cos(d.elevation);
  return {std::cos(d.azimuth) * ce, std::sin(d.azimuth) * ce,
          std::sin(d.elevation)};
}

inline Direction to_direction(const Vec3& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (n <= 0.0) return Direction{};
  const double el = std::asin(std::clamp(v[2] / n, -1.0, 1.0));
  const double az = std::atan2(v[1], v[0]);
  return make_direction(az, el);
}

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// Great-circle angle between two directions, in degrees, in [0, 180].
inline double central_angle_deg(const Direction& a, const Direction& b) {
  const double c = std::clamp(dot(to_unit_vector(a), to_unit_vector(b)), -1.0, 1.0);
  return std::acos(c) * 180.0 / kPi;
}

/// Antipode of a direction (the opposite point on the sphere).
inline Direction antipode(const Direction& d) {
  return make_direction(d.azimuth + kPi, -d.elevation);
}

}  // namespace adrc

#endif  // ADRC_DIRECTION_HPP
