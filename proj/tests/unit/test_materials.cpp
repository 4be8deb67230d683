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

#include "nlcasimir/materials.hpp"

using namespace nlcasimir;

TEST_CASE("constant permittivity") {
  const MaterialResponse m{Permittivity::constant(4.0), 0.0};
  CHECK(epsilon_at(m, 1e15) == 4.0);
  CHECK(epsilon_at(m, 0.0) == 4.0);
  CHECK(m.is_linear());
}

TEST_CASE("infinite permittivity is the perfect mirror") {
  const Permittivity p = Permittivity::from_value(std::numeric_limits<double>::infinity());
  CHECK(p.is_perfect_mirror());
  CHECK(std::isinf(p.at(1e14)));
}

TEST_CASE("tabulated permittivity") {
  SUBCASE("flat table") {
    const auto p = Permittivity::tabulated({{0.0, 3.0}, {1e16, 3.0}});
    CHECK(p.at(5e15) == 3.0);
  }
  SUBCASE("grid node and log-linear interior") {
    const auto p = Permittivity::tabulated({{1e15, 5.0}, {1e16, 2.0}});
    CHECK(p.at(1e15) == 5.0);
    CHECK(p.at(std::sqrt(1e15 * 1e16)) == doctest::Approx(3.5).epsilon(1e-14));
  }
  SUBCASE("clamped outside the table") {
    const auto p = Permittivity::tabulated({{1e15, 5.0}, {1e16, 2.0}});
    CHECK(p.at(1e12) == 5.0);
    CHECK(p.at(1e18) == 2.0);
  }
  SUBCASE("continuous and >= 1") {
    const auto p = Permittivity::tabulated({{0.0, 9.0}, {1e14, 6.0}, {1e15, 2.0}, {1e16, 1.0}});
    double prev = p.at(0.0);
    for (double xi = 1e12; xi < 1e17; xi *= 1.01) {
      const double e = p.at(xi);
      CHECK(e >= 1.0);
      CHECK(e <= prev + 1e-12);
      CHECK(std::abs(e - prev) < 0.1);
      prev = e;
    }
  }
}

TEST_CASE("permittivity validation") {
  CHECK_THROWS_AS(Permittivity::tabulated({}), InvalidInput);
  CHECK_THROWS_AS(Permittivity::tabulated({{1e15, 2.0}, {1e14, 1.5}}), InvalidInput);
  CHECK_THROWS_AS(Permittivity::tabulated({{1e14, 2.0}, {1e15, 3.0}}), InvalidInput);
  CHECK_THROWS_AS(Permittivity::tabulated({{1e14, 0.5}}), InvalidInput);
  CHECK_THROWS_AS(Permittivity::constant(0.9), InvalidInput);
  CHECK_THROWS_AS(Permittivity::constant(std::nan("")), InvalidInput);
  CHECK_THROWS_AS(Permittivity::constant(2.0).at(-1.0), InvalidInput);
}

TEST_CASE("isotropic chi3 contraction") {
  const MaterialResponse glass{Permittivity::constant(2.25), 2e-16};
  CHECK(chi3_contract(glass, Axis::x, Axis::x, Axis::x, Axis::x) == doctest::Approx(6e-16));
  const MaterialResponse unit{Permittivity::constant(1.0), 1.0};
  CHECK(chi3_contract(unit, Axis::x, Axis::x, Axis::y, Axis::y) == 1.0);
  CHECK(chi3_contract(unit, Axis::x, Axis::y, Axis::z, Axis::z) == 0.0);
  CHECK(chi3_contract(unit, Axis::x, Axis::y, Axis::x, Axis::x) == 0.0);

  constexpr Axis axes[] = {Axis::x, Axis::y, Axis::z};
  for (Axis i : axes) {
    for (Axis k : axes) {
      if (i == k) continue;
      const double iikk = chi3_contract(glass, i, i, k, k);
      CHECK(chi3_contract(glass, i, k, k, i) == iikk);
      CHECK(chi3_contract(glass, i, k, i, k) == iikk);
      CHECK(iikk == glass.chi3);
    }
  }
}

TEST_CASE("layer stack invariants") {
  const MaterialResponse nl{Permittivity::constant(2.0), 1e-16};
  const MaterialResponse lin{Permittivity::perfect_mirror(), 0.0};
  const LayerStack s(nl, lin, 1e-7, Temperature::zero());
  CHECK(s.gap_width() == 1e-7);
  CHECK(s.with_gap(2e-7).gap_width() == 2e-7);
  CHECK(s.swapped().linear_plate().chi3 == 1e-16);
  CHECK_THROWS_AS(LayerStack(nl, lin, 0.0, Temperature::zero()), InvalidInput);
  CHECK_THROWS_AS(LayerStack(nl, nl, 1e-7, Temperature::zero()), InvalidInput);
  CHECK_THROWS_AS(LayerStack({Permittivity::constant(1.0), INFINITY}, lin, 1e-7, Temperature::zero()), InvalidInput);
  CHECK_THROWS_AS(Temperature::finite(-1.0), InvalidInput);
}
