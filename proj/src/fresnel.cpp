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

#include "nlcasimir/fresnel.hpp"

#include <cmath>
#include <limits>

#include "nlcasimir/constants.hpp"

namespace nlcasimir {

cplx axial_wavevector(double eps, FrequencyAxis axis, double k0, double q) {
  if (axis == FrequencyAxis::Imaginary) {
    return {0.0, std::sqrt(eps * k0 * k0 + q * q)};
  }
  const double arg = eps * k0 * k0 - q * q;
  if (arg >= 0.0) return {std::sqrt(arg), 0.0};
  return {0.0, std::sqrt(-arg)};
}

cplx layer_wavenumber(double eps, FrequencyAxis axis, double k0) {
  const double k = std::sqrt(eps) * k0;
  return axis == FrequencyAxis::Real ? cplx{k, 0.0} : cplx{0.0, k};
}

SpectralPoint make_spectral_point(const std::array<double, 3>& eps, FrequencyAxis axis,
                                  double frequency, double q) {
  if (!(frequency >= 0.0) || !(q >= 0.0)) throw InvalidInput("frequency and q must be >= 0");
  SpectralPoint pt;
  pt.axis = axis;
  pt.frequency = frequency;
  pt.q = q;
  pt.eps = eps;
  const double k0 = frequency / constants::c;
  for (std::size_t n = 0; n < 3; ++n) {
    if (!std::isfinite(eps[n]) || eps[n] < 1.0) throw InvalidInput("spectral point needs finite eps >= 1");
    pt.k[n] = layer_wavenumber(eps[n], axis, k0);
    pt.p[n] = axial_wavevector(eps[n], axis, k0, q);
  }
  return pt;
}

cplx fresnel_s(cplx p_l, cplx p_n) {
  const cplx den = p_l + p_n;
  if (std::abs(den) == 0.0) throw SingularPointError("fresnel_s: p_l + p_n = 0");
  return (p_l - p_n) / den;
}

cplx fresnel_p(double eps_l, double eps_n, cplx p_l, cplx p_n) {
  const cplx den = eps_n * p_l + eps_l * p_n;
  if (std::abs(den) == 0.0) throw SingularPointError("fresnel_p: eps_n p_l + eps_l p_n = 0");
  return (eps_n * p_l - eps_l * p_n) / den;
}

cplx cavity_factor(cplx f_a, cplx f_b, cplx p_gap, double d) {
  if (!(d > 0.0)) throw InvalidInput("cavity_factor: d must be > 0");
  const cplx den = 1.0 - f_a * f_b * std::exp(cplx{0.0, 2.0} * p_gap * d);
  if (std::abs(den) < 1e-14) throw SingularPointError("cavity_factor: multiple-reflection pole");
  return 1.0 / den;
}

double fresnel_s_imag(double kappa_l, double kappa_n) {
  const double den = kappa_l + kappa_n;
  if (den == 0.0) throw SingularPointError("fresnel_s_imag: kappa_l + kappa_n = 0");
  return (kappa_l - kappa_n) / den;
}

double fresnel_p_imag(double eps_l, double eps_n, double kappa_l, double kappa_n) {
  const double den = eps_n * kappa_l + eps_l * kappa_n;
  if (den == 0.0) throw SingularPointError("fresnel_p_imag: vanishing denominator");
  return (eps_n * kappa_l - eps_l * kappa_n) / den;
}

GapReflection gap_reflection(double eps_plate, double y, double x) {
  if (std::isinf(eps_plate)) {
    return y > 0.0 ? GapReflection{-1.0, 1.0, std::numeric_limits<double>::infinity()}
                   : GapReflection{0.0, 1.0, std::numeric_limits<double>::infinity()};
  }
  const double kappa_gap = decay_constant(1.0, y, x);
  const double kappa = decay_constant(eps_plate, y, x);
  return {fresnel_s_imag(kappa_gap, kappa), fresnel_p_imag(1.0, eps_plate, kappa_gap, kappa), kappa};
}

}  // namespace nlcasimir
