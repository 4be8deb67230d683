/*
 * Copyright 2026 The nlcasimir Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "nlcasimir/fresnel.hpp"

using namespace nlcasimir;

TEST_CASE("axial wavevector branches") {
  CHECK(axial_wavevector(1.0, FrequencyAxis::Real, 5.0, 3.0) == cplx(4.0, 0.0));
  CHECK(axial_wavevector(1.0, FrequencyAxis::Real, 3.0, 5.0) == cplx(0.0, 4.0));
  CHECK(axial_wavevector(1.0, FrequencyAxis::Imaginary, 3.0, 4.0) == cplx(0.0, 5.0));
  CHECK(axial_wavevector(1.0, FrequencyAxis::Real, 3.0, 3.0) == cplx(0.0, 0.0));
}

TEST_CASE("branch continuity across the light line") {
  const double k0 = 2.0;
  cplx prev = axial_wavevector(1.0, FrequencyAxis::Real, k0, 1.9);
  for (double q = 1.9; q < 2.1; q += 1e-4) {
    const cplx p = axial_wavevector(1.0, FrequencyAxis::Real, k0, q);
    CHECK(p.imag() >= 0.0);
    CHECK(std::abs(p - prev) < 0.03);
    prev = p;
  }
}

TEST_CASE("Fresnel coefficients") {
  const cplx p{0.0, 2.0};
  CHECK(fresnel_s(p, p) == cplx(0.0, 0.0));
  CHECK(std::abs(fresnel_s(cplx(0, 1), cplx(0, 3)) - cplx(-0.5, 0.0)) < 1e-15);
  CHECK_THROWS_AS(fresnel_s(cplx(1, 0), cplx(-1, 0)), SingularPointError);

  // Approach to the mirror limit from finite eps.
  const double k0 = 1.0, q = 0.7;
  double prev_gap = 1.0;
  for (double eps : {1e2, 1e4, 1e6}) {
    const cplx pl = axial_wavevector(1.0, FrequencyAxis::Imaginary, k0, q);
    const cplx pn = axial_wavevector(eps, FrequencyAxis::Imaginary, k0, q);
    const double gap = std::abs(fresnel_p(1.0, eps, pl, pn) - 1.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-2);
}

TEST_CASE("cavity factor") {
  CHECK(cavity_factor(0.0, 0.7, cplx(0, 1), 1.0) == cplx(1.0, 0.0));
  const double kappa = std::log(2.0) / 2.0;
  CHECK(std::abs(cavity_factor(1.0, 1.0, cplx(0, kappa), 1.0) - 2.0) < 1e-14);
  CHECK(std::abs(cavity_factor(1.0, 1.0, cplx(0, 1.0), 1e3) - 1.0) < 1e-15);
  CHECK_THROWS_AS(cavity_factor(1.0, 1.0, cplx(0, 0), 1.0), SingularPointError);
}

TEST_CASE("imaginary-axis invariants on random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const std::array<double, 3> eps{1.0 + 20.0 * u(rng), 1.0, 1.0 + 20.0 * u(rng)};
    const SpectralPoint pt = make_spectral_point(eps, FrequencyAxis::Imaginary, 1e15 * u(rng) + 1.0, 1e7 * u(rng));
    for (const cplx& p : pt.p) {
      CHECK(p.real() == 0.0);
      CHECK(p.imag() >= 0.0);
    }
    const cplx fs = fresnel_s(pt.p[1], pt.p[0]);
    const cplx fp = fresnel_p(eps[1], eps[0], pt.p[1], pt.p[0]);
    CHECK(fs.imag() == 0.0);
    CHECK(fp.imag() == 0.0);
    CHECK(std::abs(fs) <= 1.0);
    CHECK(std::abs(fp) <= 1.0);
    CHECK(fresnel_s(pt.p[0], pt.p[1]) == -fs);
  }
}

TEST_CASE("gap reflection limits") {
  const auto mirror = std::numeric_limits<double>::infinity();
  CHECK(gap_reflection(mirror, 0.5, 0.3).s == -1.0);
  CHECK(gap_reflection(mirror, 0.5, 0.3).p == 1.0);
  CHECK(gap_reflection(mirror, 0.0, 0.3).s == 0.0);
  CHECK(gap_reflection(mirror, 0.0, 0.3).p == 1.0);
  const GapReflection r = gap_reflection(4.0, 0.0, 0.3);
  CHECK(r.s == 0.0);
  CHECK(r.p == doctest::Approx(3.0 / 5.0));
  const GapReflection v = gap_reflection(1.0, 0.4, 0.3);
  CHECK(v.s == 0.0);
  CHECK(v.p == 0.0);
}
