// Copyright 2026 The wgabor authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "core/warpmap.hpp"
#include "doctest.h"

using wgabor::WarpMap;

namespace {
constexpr double kSR = 44100.0;
constexpr double kF0 = 12.0;
constexpr double kK = 36.0;
}  // namespace

TEST_CASE("identity map") {
  const WarpMap m = WarpMap::identity(44100.0, 3.0);
  CHECK(m.eval(123.4) == doctest::Approx(123.4).epsilon(1e-15));
  CHECK(m.eval_inverse(-77.0) == doctest::Approx(-77.0).epsilon(1e-15));
  CHECK(m.eval_derivative(5.0) == doctest::Approx(1.0));
  CHECK(m.top_band() == 7350);
}

TEST_CASE("identity map requires Nyquist on the band grid") {
  CHECK_THROWS(WarpMap::identity(44100.0, 13.0));
}

TEST_CASE("exponential core with linear tails") {
  const double b = 3.0;
  const WarpMap m = WarpMap::exponential(kF0, kK, kSR, b);

  // Low tangency: the only tangent line through the origin touches the
  // exponential at nu = k/ln2, i.e. f = e*f0.
  CHECK(m.nu_in() == doctest::Approx(kK / std::log(2.0)).epsilon(1e-12));
  CHECK(m.f_in() ==
        doctest::Approx(kF0 * std::exp(1.0)).epsilon(1e-12));
  CHECK(m.slope_lo() ==
        doctest::Approx(kF0 * std::exp(1.0) * std::log(2.0) / kK)
            .epsilon(1e-12));

  // Core region (above nu_in) is the exponential itself; one octave per k.
  CHECK(m.eval(2.0 * kK) == doctest::Approx(4.0 * kF0).epsilon(1e-12));
  CHECK(m.eval(3.0 * kK) == doctest::Approx(8.0 * kF0).epsilon(1e-12));
  // Below nu_in the map follows the tangent through the origin.
  CHECK(m.eval(kK) == doctest::Approx(kK * m.slope_lo()).epsilon(1e-12));

  // The upper tail passes exactly through (nu_top, SR/2) with nu_top on the
  // band grid.
  CHECK(m.nu_top() == doctest::Approx(m.top_band() * b).epsilon(1e-12));
  CHECK(m.eval(m.nu_top()) == doctest::Approx(kSR / 2.0).epsilon(1e-9));

  // Odd symmetry.
  for (double nu : {0.5, 10.0, 52.0, 200.0, 390.0, 500.0}) {
    CHECK(m.eval(-nu) == doctest::Approx(-m.eval(nu)).epsilon(1e-14));
  }
}

TEST_CASE("inverse and derivative are consistent") {
  const WarpMap m = WarpMap::exponential(kF0, kK, kSR, 3.0);
  for (int i = 0; i <= 2000; ++i) {
    const double nu = -450.0 + i * 0.45;
    const double f = m.eval(nu);
    CHECK(m.eval_inverse(f) == doctest::Approx(nu).epsilon(1e-10));
    // Strictly increasing.
    CHECK(m.eval_derivative(nu) > 0.0);
    // Central-difference check of the closed-form derivative.
    const double h = 1e-5;
    const double num = (m.eval(nu + h) - m.eval(nu - h)) / (2.0 * h);
    CHECK(m.eval_derivative(nu) == doctest::Approx(num).epsilon(1e-6));
  }
}

TEST_CASE("C1 at both seams") {
  const WarpMap m = WarpMap::exponential(kF0, kK, kSR, 3.0);
  const double e = 1e-9;
  for (double seam : {m.nu_in(), m.nu_out(), -m.nu_in()}) {
    CHECK(m.eval(seam - e) == doctest::Approx(m.eval(seam + e)).epsilon(1e-9));
    CHECK(m.eval_derivative(seam - e) ==
          doctest::Approx(m.eval_derivative(seam + e)).epsilon(1e-6));
  }
}

TEST_CASE("band counts for the published parameter sets") {
  // top_band + 1 bands cover [0, SR/2] with theta(top_band*b) = SR/2.
  const struct {
    double b;
    int q_sup;
  } cases[] = {{3.0, 132}, {12.0 / 7.0, 229}, {6.0, 67}, {4.8, 83}, {4.0, 99}};
  for (const auto& c : cases) {
    const WarpMap m = WarpMap::exponential(kF0, kK, kSR, c.b);
    CHECK(m.top_band() + 1 == c.q_sup);
  }
}

TEST_CASE("infeasible construction fails") {
  // f_in = e*f0 must stay below SR/2.
  CHECK_THROWS(WarpMap::exponential(10000.0, 36.0, kSR, 3.0));
  CHECK_THROWS(WarpMap::exponential(-1.0, 36.0, kSR, 3.0));
}

TEST_CASE("field round trip is bit exact") {
  const WarpMap m = WarpMap::exponential(kF0, kK, kSR, 3.0);
  const WarpMap r = WarpMap::from_fields(
      m.kind(), m.f0(), m.k(), m.sample_rate(), m.band_spacing(), m.nu_in(),
      m.nu_out(), m.nu_top(), m.slope_lo(), m.slope_hi(), m.top_band());
  for (double nu : {0.0, 1.0, 51.9, 360.0, 396.0, -100.0}) {
    CHECK(m.eval(nu) == r.eval(nu));
    CHECK(m.eval_derivative(nu) == r.eval_derivative(nu));
  }
}
