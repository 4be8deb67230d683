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

#include "nlcasimir/constants.hpp"
#include "nlcasimir/quadrature.hpp"

using namespace nlcasimir;

namespace {

QuadratureOptions tol(double rel) {
  QuadratureOptions o;
  o.rel_tol = rel;
  return o;
}

}  // namespace

TEST_CASE("semi-infinite integrals") {
  const IntegrationResult a = integrate_semi_infinite([](double x) { return std::exp(-x); }, tol(1e-10));
  CHECK(a.converged);
  CHECK(std::abs(a.value - 1.0) < 1e-10);
  CHECK(a.abs_error <= 1e-10 * std::max(1.0, std::abs(a.value)));

  const IntegrationResult b = integrate_semi_infinite([](double x) { return x * x * x * std::exp(-x); }, tol(1e-10));
  CHECK(b.value == doctest::Approx(6.0).epsilon(1e-10));

  const IntegrationResult c = integrate_semi_infinite([](double x) { return x * std::exp(-x * x); }, tol(1e-10));
  CHECK(c.value == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("finite interval and budget exhaustion") {
  const IntegrationResult r = integrate_interval([](double x) { return std::sin(x); }, 0.0, constants::pi, tol(1e-12));
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

  QuadratureOptions tight = tol(1e-12);
  tight.max_evaluations = 100;
  const IntegrationResult bad = integrate_interval([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, tight);
  CHECK_FALSE(bad.converged);
  CHECK(bad.abs_error > 0.0);
}

TEST_CASE("tolerance range is enforced") {
  CHECK_THROWS_AS(integrate_semi_infinite([](double x) { return std::exp(-x); }, tol(1e-15)), InvalidInput);
  CHECK_THROWS_AS(integrate_semi_infinite([](double x) { return std::exp(-x); }, tol(0.1)), InvalidInput);
  CHECK_THROWS_AS(integrate_interval([](double) { return std::nan(""); }, 0.0, 1.0), std::domain_error);
}

TEST_CASE("2-D integrals") {
  const auto o = tol(1e-9);
  CHECK(integrate_2d([](double x, double y) { return std::exp(-x - y); }, o).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(integrate_2d([](double x, double y) { return x * y * std::exp(-x - y); }, o).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(integrate_2d([](double x, double y) { return std::exp(-(x + y)) * std::cos(0.0); }, o).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  const IntegrationResult r = integrate_2d([](double x, double y) { return 1.0 / (1.0 + x + y) * std::exp(-x - y); }, o);
  CHECK(r.converged);
  CHECK(r.evaluations > 225);
}

TEST_CASE("linearity") {
  const auto o = tol(1e-10);
  auto f = [](double x) { return std::exp(-x) * std::cos(x); };
  auto g = [](double x) { return x * std::exp(-2.0 * x); };
  const double lhs = integrate_semi_infinite([&](double x) { return 3.0 * f(x) - 2.0 * g(x); }, o).value;
  const double rhs = 3.0 * integrate_semi_infinite(f, o).value - 2.0 * integrate_semi_infinite(g, o).value;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("refinement never increases the error estimate") {
  auto f = [](double x) { return std::sqrt(x) * std::exp(-x) / (1.0 + x * x); };
  double prev = INFINITY;
  for (double rel = 1e-3; rel > 1e-11; rel /= 2.0) {
    const IntegrationResult r = integrate_semi_infinite(f, tol(rel));
    CHECK(r.abs_error <= prev);
    prev = r.abs_error;
  }
}

TEST_CASE("primed Matsubara sums") {
  const auto o = tol(1e-10);
  const MatsubaraGrid grid{Temperature::Regime::Finite, 1.0};
  const IntegrationResult geo = matsubara_sum([](double xi) { return std::pow(0.5, xi); }, grid, o);
  CHECK(geo.converged);
  CHECK(geo.value == doctest::Approx(1.5).epsilon(1e-10));

  const MatsubaraGrid high{Temperature::Regime::High, 1.0};
  CHECK(matsubara_sum([](double) { return 7.0; }, high, o).value == 3.5);

  // T -> 0: (hbar / 2 pi k_B T) s, independent of the T used to label the grid.
  const double s = 2.5e14;
  for (double kelvin : {1.0, 300.0}) {
    const Temperature t = Temperature::finite(kelvin);
    MatsubaraGrid zero = MatsubaraGrid::for_temperature(t);
    zero.regime = Temperature::Regime::Zero;
    QuadratureOptions scaled = o;
    scaled.scale = s;
    const IntegrationResult z = matsubara_sum([s](double xi) { return std::exp(-xi / s); }, zero, scaled);
    const double expected = constants::hbar / (2.0 * constants::pi * t.thermal_energy()) * s;
    CHECK(z.value == doctest::Approx(expected).epsilon(1e-10));
    CHECK(z.value * zero.step == doctest::Approx(s).epsilon(1e-10));
  }
}

TEST_CASE("non-decaying terms are reported unconverged") {
  QuadratureOptions o = tol(1e-8);
  o.max_terms = 500;
  const IntegrationResult r = matsubara_sum([](double) { return 1.0; }, {Temperature::Regime::Finite, 1.0}, o);
  CHECK_FALSE(r.converged);
}

TEST_CASE("double Matsubara sums") {
  const auto o = tol(1e-10);
  const MatsubaraGrid grid{Temperature::Regime::Finite, 1.0};
  const IntegrationResult sep =
      double_matsubara_sum([](double a, double b) { return std::pow(0.5, a) * std::pow(0.5, b); }, grid, o);
  CHECK(sep.value == doctest::Approx(2.25).epsilon(1e-9));

  const IntegrationResult mixed =
      double_matsubara_sum([](double a, double b) { return std::pow(0.5, a) * std::pow(0.25, b); }, grid, o);
  const double single_a = matsubara_sum([](double a) { return std::pow(0.5, a); }, grid, o).value;
  const double single_b = matsubara_sum([](double b) { return std::pow(0.25, b); }, grid, o).value;
  CHECK(mixed.value == doctest::Approx(single_a * single_b).epsilon(1e-9));

  CHECK(double_matsubara_sum([](double, double) { return 8.0; }, {Temperature::Regime::High, 1.0}, o).value == 2.0);

  const MatsubaraGrid zero{Temperature::Regime::Zero, 0.5};
  const IntegrationResult z =
      double_matsubara_sum([](double a, double b) { return std::exp(-a) * std::exp(-3.0 * b); }, zero, o);
  CHECK(z.value == doctest::Approx((1.0 / 0.5) * (1.0 / 1.5)).epsilon(1e-9));
}
