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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nlcasimir {

/// Raised for inputs that violate a documented precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Permittivity on the imaginary frequency axis, eps(i xi).
///
/// Three models are supported: a dimensionless constant eps >= 1, the
/// symbolic perfect mirror (eps = +inf, reflection coefficients are taken
/// exactly), and a table of (xi [rad/s], eps) pairs interpolated linearly in
/// ln(xi) and clamped to the end values outside the table.
class Permittivity {
 public:
  enum class Kind { Constant, PerfectMirror, Tabulated };

  Permittivity() = default;

  static Permittivity constant(double eps);
  static Permittivity perfect_mirror();
  static Permittivity tabulated(std::vector<std::pair<double, double>> table);
  /// Constant model, or the perfect mirror when eps is +inf.
  static Permittivity from_value(double eps);

  Kind kind() const { return kind_; }
  bool is_perfect_mirror() const { return kind_ == Kind::PerfectMirror; }
  bool is_constant() const { return kind_ != Kind::Tabulated; }

  /// eps(i xi); +inf for the perfect mirror. Throws InvalidInput for xi < 0.
  double at(double xi) const;

  const std::vector<std::pair<double, double>>& table() const { return table_; }

 private:
  Kind kind_ = Kind::Constant;
  double value_ = 1.0;
  std::vector<std::pair<double, double>> table_;
};

/// Linear permittivity plus a real, frequency-independent isotropic chi3 [m^2/V^2].
struct MaterialResponse {
  Permittivity epsilon;
  double chi3 = 0.0;

  bool is_linear() const { return chi3 == 0.0; }
};

MaterialResponse vacuum();

double epsilon_at(const MaterialResponse& material, double xi);

enum class Axis { x = 0, y = 1, z = 2 };

/// Component chi_ijkl of an isotropic third-order susceptibility: 3 chi3 for
/// iiii, chi3 for the paired patterns iikk, ikki and ikik (i != k), 0 otherwise.
double chi3_contract(const MaterialResponse& material, Axis i, Axis j, Axis k, Axis l);

/// Temperature with symbolic zero- and high-temperature limits. The
/// high-temperature limit still carries a kelvin value for the k_B T prefactor.
struct Temperature {
  enum class Regime { Zero, Finite, High };

  Regime regime = Regime::Zero;
  double kelvin = 0.0;

  static Temperature zero() { return {Regime::Zero, 0.0}; }
  static Temperature finite(double kelvin);
  static Temperature high(double kelvin);

  double thermal_energy() const;  // k_B T [J]
};

std::string to_string(Temperature::Regime regime);

/// Nonlinear half-space | vacuum gap of width d | linear half-space.
///
/// At most one plate may carry chi3 != 0. The nonlinear module swaps the
/// plates when only the second one is nonlinear.
class LayerStack {
 public:
  LayerStack(MaterialResponse nonlinear_plate, MaterialResponse linear_plate,
             double gap_width, Temperature temperature);

  const MaterialResponse& nonlinear_plate() const { return layer1_; }
  const MaterialResponse& linear_plate() const { return layer3_; }
  double gap_width() const { return gap_width_; }
  const Temperature& temperature() const { return temperature_; }

  LayerStack with_gap(double gap_width) const;
  LayerStack with_temperature(Temperature temperature) const;
  LayerStack with_chi3(double chi3) const;
  LayerStack swapped() const;

 private:
  MaterialResponse layer1_;
  MaterialResponse layer3_;
  double gap_width_;
  Temperature temperature_;
};

}  // namespace nlcasimir
