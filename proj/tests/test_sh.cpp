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
#include <random>

#include "adrc/direction.hpp"
#include "adrc/sh.hpp"

using namespace adrc;

namespace {

// Independent oracle: associated Legendre recurrence + Schmidt
// semi-normalization, no shared code with sh_eval's explicit polynomials.
double assoc_legendre(int l, int m, double x) {
  // P_m^m with no Condon-Shortley phase
  double pmm = 1.0;
  if (m > 0) {
    const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= fact * somx2;
      fact += 2.0;
    }
  }
  if (l == m) return pmm;
  double pmmp1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pmmp1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = ((2.0 * ll - 1.0) * x * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double sh_oracle(int l, int m, const Direction& d) {
  const int am = std::abs(m);
  const double p = assoc_legendre(l, am, std::sin(d.elevation));
  const double norm = std::sqrt((m == 0 ? 1.0 : 2.0) * factorial(l - am) /
                                factorial(l + am));
  if (m >= 0) return norm * p * std::cos(m * d.azimuth);
  return norm * p * std::sin(am * d.azimuth);
}

}  // namespace

TEST_CASE("acn indexing") {
  CHECK(acn_index(0, 0) == 0);
  CHECK(acn_index(1, -1) == 1);
  CHECK(acn_index(1, 0) == 2);
  CHECK(acn_index(1, 1) == 3);
  CHECK(acn_index(3, 3) == 15);
  for (int acn = 0; acn < 16; ++acn) {
    const int l = acn_order(acn);
    CHECK(l * l <= acn);
    CHECK(acn < (l + 1) * (l + 1));
  }
}

TEST_CASE("first-order values on the axes") {
  const ShVector front = sh_eval(make_direction(0.0, 0.0), 1);
  CHECK(front.values[0] == 1.0);
  CHECK_THAT(front.values[1], Catch::Matchers::WithinAbs(0.0, 1e-15));
  CHECK_THAT(front.values[2], Catch::Matchers::WithinAbs(0.0, 1e-15));
  CHECK_THAT(front.values[3], Catch::Matchers::WithinAbs(1.0, 1e-15));

  const ShVector left = sh_eval(make_direction(kPi / 2, 0.0), 1);
  CHECK_THAT(left.values[1], Catch::Matchers::WithinAbs(1.0, 1e-15));
  CHECK_THAT(left.values[3], Catch::Matchers::WithinAbs(0.0, 1e-15));
  CHECK_THAT(left.values[2], Catch::Matchers::WithinAbs(0.0, 1e-15));
}

TEST_CASE("order-3 values match the Legendre oracle at (0.7, 0.3)") {
  const Direction d = make_direction(0.7, 0.3);
  const ShVector sh = sh_eval(d, 3);
  REQUIRE(sh.values.size() == 16);
  // frozen oracle values
  const double expected[16] = {
      1.0,                 0.615444663558273,  0.29552020666134,
      0.730681649935512,   0.778893067537598,  0.315019051465314,
      -0.369001711182259,  0.374003795816488,  0.134340926061972,
      0.595011350931876,   0.514695086647511,  -0.212311975556912,
      -0.378759241019175,  -0.252065658842623, 0.088772923346677,
      -0.34799108341099};
  for (int i = 0; i < 16; ++i)
    CHECK_THAT(sh.values[static_cast<std::size_t>(i)],
               Catch::Matchers::WithinAbs(expected[i], 1e-12));
  // and against the oracle directly
  for (int l = 0; l <= 3; ++l)
    for (int m = -l; m <= l; ++m)
      CHECK_THAT(sh.values[static_cast<std::size_t>(acn_index(l, m))],
                 Catch::Matchers::WithinAbs(sh_oracle(l, m, d), 1e-12));
}

TEST_CASE("oracle agreement over random directions") {
  std::mt19937 rng(99);
  for (int t = 0; t < 200; ++t) {
    const double az = (rng() / 4294967296.0 * 2.0 - 1.0) * kPi;
    const double el = (rng() / 4294967296.0 - 0.5) * kPi;
    const Direction d = make_direction(az, el);
    const ShVector sh = sh_eval(d, 3);
    for (int l = 0; l <= 3; ++l)
      for (int m = -l; m <= l; ++m)
        REQUIRE_THAT(sh.values[static_cast<std::size_t>(acn_index(l, m))],
                     Catch::Matchers::WithinAbs(sh_oracle(l, m, d), 1e-12));
  }
}

TEST_CASE("SN3D bound |Y| <= 1 on a 1-degree grid") {
  for (int eld = -90; eld <= 90; ++eld) {
    for (int azd = -180; azd < 180; ++azd) {
      const Direction d =
          make_direction(azd * kPi / 180.0, eld * kPi / 180.0);
      const ShVector sh = sh_eval(d, 3);
      for (double v : sh.values) REQUIRE(std::abs(v) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("antipodal parity Y(-d) = (-1)^l Y(d)") {
  std::mt19937 rng(7);
  for (int t = 0; t < 100; ++t) {
    const double az = (rng() / 4294967296.0 * 2.0 - 1.0) * kPi;
    const double el = (rng() / 4294967296.0 - 0.5) * kPi;
    const Direction d = make_direction(az, el);
    const ShVector a = sh_eval(d, 3);
    const ShVector b = sh_eval(antipode(d), 3);
    for (int l = 0; l <= 3; ++l) {
      const double sign = (l % 2 == 0) ? 1.0 : -1.0;
      for (int m = -l; m <= l; ++m) {
        const auto i = static_cast<std::size_t>(acn_index(l, m));
        REQUIRE_THAT(b.values[i],
                     Catch::Matchers::WithinAbs(sign * a.values[i], 1e-12));
      }
    }
  }
}

TEST_CASE("unsupported order") {
  CHECK_THROWS_AS(sh_eval(Direction{}, 4), ConfigError);
}

TEST_CASE("central angle basics") {
  const Direction a = make_direction(0.0, 0.0);
  CHECK(central_angle_deg(a, a) == 0.0);
  CHECK_THAT(central_angle_deg(a, antipode(a)),
             Catch::Matchers::WithinAbs(180.0, 1e-12));
  CHECK_THAT(central_angle_deg(a, make_direction(kPi / 2, 0.0)),
             Catch::Matchers::WithinAbs(90.0, 1e-12));
}

TEST_CASE("direction canonicalization") {
  const Direction pole = make_direction(1.3, kPi / 2);
  CHECK(pole.azimuth == 0.0);
  const Direction wrapped = make_direction(kPi + 0.25, 0.0);
  CHECK_THAT(wrapped.azimuth, Catch::Matchers::WithinAbs(-kPi + 0.25, 1e-12));
}
