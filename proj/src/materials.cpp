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

#include "nlcasimir/materials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlcasimir/constants.hpp"

namespace nlcasimir {

Permittivity Permittivity::constant(double eps) {
  if (!(eps >= 1.0) || std::isnan(eps)) {
    throw InvalidInput("permittivity must be >= 1");
  }
  if (std::isinf(eps)) return perfect_mirror();
  Permittivity p;
  p.kind_ = Kind::Constant;
  p.value_ = eps;
  return p;
}

Permittivity Permittivity::perfect_mirror() {
  Permittivity p;
  p.kind_ = Kind::PerfectMirror;
  p.value_ = std::numeric_limits<double>::infinity();
  return p;
}

Permittivity Permittivity::from_value(double eps) { return constant(eps); }

Permittivity Permittivity::tabulated(std::vector<std::pair<double, double>> table) {
  if (table.empty()) throw InvalidInput("permittivity table is empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto [xi, eps] = table[i];
    if (!std::isfinite(xi) || xi < 0.0) throw InvalidInput("table frequency must be finite and >= 0");
    if (!std::isfinite(eps) || eps < 1.0) throw InvalidInput("table permittivity must be finite and >= 1");
    if (i > 0) {
      if (!(xi > table[i - 1].first)) throw InvalidInput("table frequencies must be strictly increasing");
      if (eps > table[i - 1].second) throw InvalidInput("eps(i xi) must be non-increasing in xi");
    }
  }
  Permittivity p;
  p.kind_ = Kind::Tabulated;
  p.table_ = std::move(table);
  return p;
}

double Permittivity::at(double xi) const {
  if (!(xi >= 0.0)) throw InvalidInput("imaginary frequency must be >= 0");
  if (kind_ != Kind::Tabulated) return value_;

  const auto& t = table_;
  if (xi <= t.front().first) return t.front().second;
  if (xi >= t.back().first) return t.back().second;

  auto upper = std::upper_bound(t.begin(), t.end(), xi,
                                [](double v, const auto& node) { return v < node.first; });
  const auto& [xb, eb] = *upper;
  const auto& [xa, ea] = *(upper - 1);
  // A segment starting at xi = 0 has no logarithm; it is linear in xi.
  const double s = xa == 0.0 ? (xi - xa) / (xb - xa) : std::log(xi / xa) / std::log(xb / xa);
  return ea + s * (eb - ea);
}

MaterialResponse vacuum() { return {Permittivity::constant(1.0), 0.0}; }

double epsilon_at(const MaterialResponse& material, double xi) { return material.epsilon.at(xi); }

double chi3_contract(const MaterialResponse& material, Axis i, Axis j, Axis k, Axis l) {
  if (i == j && j == k && k == l) return 3.0 * material.chi3;
  const bool iikk = i == j && k == l;
  const bool ikki = i == l && j == k;
  const bool ikik = i == k && j == l;
  return (iikk || ikki || ikik) ? material.chi3 : 0.0;
}

Temperature Temperature::finite(double kelvin) {
  if (!(kelvin > 0.0) || !std::isfinite(kelvin)) throw InvalidInput("finite temperature must be > 0 K");
  return {Regime::Finite, kelvin};
}

Temperature Temperature::high(double kelvin) {
  if (!(kelvin > 0.0) || !std::isfinite(kelvin)) throw InvalidInput("high-temperature limit needs T > 0 K");
  return {Regime::High, kelvin};
}

double Temperature::thermal_energy() const { return constants::k_B * kelvin; }

std::string to_string(Temperature::Regime regime) {
  switch (regime) {
    case Temperature::Regime::Zero: return "zero";
    case Temperature::Regime::Finite: return "finite";
    case Temperature::Regime::High: return "high";
  }
  return "unknown";
}

LayerStack::LayerStack(MaterialResponse nonlinear_plate, MaterialResponse linear_plate,
                       double gap_width, Temperature temperature)
    : layer1_(std::move(nonlinear_plate)),
      layer3_(std::move(linear_plate)),
      gap_width_(gap_width),
      temperature_(temperature) {
  if (!(gap_width_ > 0.0) || !std::isfinite(gap_width_)) throw InvalidInput("gap width must be > 0");
  if (!std::isfinite(layer1_.chi3) || !std::isfinite(layer3_.chi3)) throw InvalidInput("chi3 must be finite");
  if (layer1_.chi3 != 0.0 && layer3_.chi3 != 0.0) {
    throw InvalidInput("at most one plate may carry chi3 (first-order theory)");
  }
}

LayerStack LayerStack::with_gap(double gap_width) const {
  return LayerStack(layer1_, layer3_, gap_width, temperature_);
}

LayerStack LayerStack::with_temperature(Temperature temperature) const {
  return LayerStack(layer1_, layer3_, gap_width_, temperature);
}

LayerStack LayerStack::with_chi3(double chi3) const {
  MaterialResponse nl = layer1_;
  nl.chi3 = chi3;
  return LayerStack(nl, layer3_, gap_width_, temperature_);
}

LayerStack LayerStack::swapped() const { return LayerStack(layer3_, layer1_, gap_width_, temperature_); }

}  // namespace nlcasimir
