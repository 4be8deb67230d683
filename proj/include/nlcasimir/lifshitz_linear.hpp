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

#pragma once

#include <cstddef>

#include "nlcasimir/materials.hpp"
#include "nlcasimir/quadrature.hpp"

namespace nlcasimir {

/// One contribution to the plate pressure [Pa]; positive is attractive.
struct PressureTerm {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

struct PressureResult {
  PressureTerm linear;
  PressureTerm nonlinear;
  double total = 0.0;
  double total_error = 0.0;
  Temperature::Regime regime = Temperature::Regime::Zero;
  bool converged = true;
};

PressureTerm to_pressure_term(const IntegrationResult& r, double scale);

/// Lifshitz pressure between the two plates of the stack (chi3 ignored).
PressureTerm pressure_linear(const LayerStack& stack, const QuadratureOptions& opt = {});

/// Dimensionless I_lin with P_lin = (hbar c / d^4) I_lin at T = 0 and
/// P_lin = (k_B T / d^3) I_lin in the high-temperature limit. Either
/// permittivity may be +inf (perfect mirror).
IntegrationResult i_lin_zero_T(double eps_nl, double eps_lin, const QuadratureOptions& opt = {});
IntegrationResult i_lin_high_T(double eps_nl, double eps_lin, const QuadratureOptions& opt = {});

/// Same functions for general material models, extracted at gap width d.
IntegrationResult i_lin(const MaterialResponse& plate1, const MaterialResponse& plate3,
                        Temperature::Regime regime, double d, const QuadratureOptions& opt = {});

}  // namespace nlcasimir
