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

#include "nlcasimir/lifshitz_linear.hpp"

#include <cmath>

#include "nlcasimir/constants.hpp"
#include "nlcasimir/fresnel.hpp"

namespace nlcasimir {

namespace {

constexpr double kReferenceGap = 1e-6;
constexpr double kReferenceKelvin = 300.0;

// x rho sum_sigma R e^{-2 rho} / (1 - R e^{-2 rho}) with R = F21 F23, in gap units.
double linear_integrand(double eps1, double eps3, double y, double x) {
  const GapReflection r1 = gap_reflection(eps1, y, x);
  const GapReflection r3 = gap_reflection(eps3, y, x);
  const double rho = decay_constant(1.0, y, x);
  const double em1 = std::expm1(2.0 * rho);
  double sum = 0.0;
  for (const double rr : {r1.s * r3.s, r1.p * r3.p}) {
    if (rr != 0.0) sum += rr / (em1 + 1.0 - rr);
  }
  return x * rho * sum;
}

}  // namespace

PressureTerm to_pressure_term(const IntegrationResult& r, double scale) {
  return {r.value * scale, r.abs_error * std::abs(scale), r.evaluations, r.converged};
}

PressureTerm pressure_linear(const LayerStack& stack, const QuadratureOptions& opt) {
  const double d = stack.gap_width();
  const double freq_unit = constants::c / d;  // y = xi d / c
  const auto& eps1 = stack.nonlinear_plate().epsilon;
  const auto& eps3 = stack.linear_plate().epsilon;
  if (eps1.is_constant() && eps3.is_constant() && eps1.at(0.0) == 1.0 && eps3.at(0.0) == 1.0) {
    return {};
  }

  const MatsubaraGrid grid = MatsubaraGrid::for_temperature(stack.temperature(), freq_unit);
  QuadratureOptions inner = opt.inner();
  auto term = [&](double y) {
    const double e1 = eps1.at(y * freq_unit);
    const double e3 = eps3.at(y * freq_unit);
    return integrate_semi_infinite([&](double x) { return linear_integrand(e1, e3, y, x); }, inner);
  };
  const IntegrationResult sum = matsubara_sum(term, grid, opt);
  const double scale = constants::hbar * constants::c / (2.0 * constants::pi * constants::pi * std::pow(d, 4)) *
                       grid.step;
  return to_pressure_term(sum, scale);
}

IntegrationResult i_lin(const MaterialResponse& plate1, const MaterialResponse& plate3,
                        Temperature::Regime regime, double d, const QuadratureOptions& opt) {
  using Regime = Temperature::Regime;
  if (regime == Regime::Finite) throw InvalidInput("I_lin is defined only in the T = 0 and high-T limits");
  const Temperature t = regime == Regime::Zero ? Temperature::zero() : Temperature::high(kReferenceKelvin);
  MaterialResponse m1 = plate1, m3 = plate3;
  m1.chi3 = m3.chi3 = 0.0;
  const PressureTerm p = pressure_linear(LayerStack(m1, m3, d, t), opt);
  const double unit = regime == Regime::Zero ? constants::hbar * constants::c / std::pow(d, 4)
                                             : t.thermal_energy() / std::pow(d, 3);
  return {p.value / unit, p.abs_error / unit, p.evaluations, p.converged};
}

IntegrationResult i_lin_zero_T(double eps_nl, double eps_lin, const QuadratureOptions& opt) {
  return i_lin({Permittivity::from_value(eps_nl), 0.0}, {Permittivity::from_value(eps_lin), 0.0},
               Temperature::Regime::Zero, kReferenceGap, opt);
}

IntegrationResult i_lin_high_T(double eps_nl, double eps_lin, const QuadratureOptions& opt) {
  return i_lin({Permittivity::from_value(eps_nl), 0.0}, {Permittivity::from_value(eps_lin), 0.0},
               Temperature::Regime::High, kReferenceGap, opt);
}

}  // namespace nlcasimir
