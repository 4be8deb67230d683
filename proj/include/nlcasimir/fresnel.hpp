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

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "nlcasimir/materials.hpp"

namespace nlcasimir {

using cplx = std::complex<double>;

/// A reflection or cavity denominator vanished; the caller must move the node.
class SingularPointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class FrequencyAxis { Real, Imaginary };

/// Axial wavevector p = sqrt(eps k0^2 - q^2) with Im p >= 0 on the real axis,
/// p = i sqrt(eps k0^2 + q^2) on the imaginary axis. k0 is omega/c (or xi/c).
cplx axial_wavevector(double eps, FrequencyAxis axis, double k0, double q);

/// Layer wavenumber k_n = sqrt(eps) k0 (real axis) or i sqrt(eps) k0 (imaginary axis).
cplx layer_wavenumber(double eps, FrequencyAxis axis, double k0);

/// One evaluation point of the three-region stack. Index 0 is the nonlinear
/// plate, 1 the vacuum gap, 2 the linear plate.
struct SpectralPoint {
  FrequencyAxis axis = FrequencyAxis::Imaginary;
  double frequency = 0.0;  // omega or xi [rad/s]
  double q = 0.0;          // transverse momentum [1/m]
  std::array<double, 3> eps{1.0, 1.0, 1.0};
  std::array<cplx, 3> k{};
  std::array<cplx, 3> p{};
};

/// Builds k_n and p_n for finite permittivities.
SpectralPoint make_spectral_point(const std::array<double, 3>& eps, FrequencyAxis axis,
                                  double frequency, double q);

cplx fresnel_s(cplx p_l, cplx p_n);
cplx fresnel_p(double eps_l, double eps_n, cplx p_l, cplx p_n);

/// 1 / (1 - F_a F_b exp(2 i p_gap d)).
cplx cavity_factor(cplx f_a, cplx f_b, cplx p_gap, double d);

// Imaginary-axis forms in real arithmetic. Lengths are in units of the gap
// width: y = xi d / c, x = q d, kappa = p d / i.

inline double decay_constant(double eps, double y, double x) {
  return std::sqrt(eps * y * y + x * x);
}

double fresnel_s_imag(double kappa_l, double kappa_n);
double fresnel_p_imag(double eps_l, double eps_n, double kappa_l, double kappa_n);

/// Reflection coefficients F_2n seen from the vacuum gap towards plate n.
struct GapReflection {
  double s = 0.0;
  double p = 0.0;
  double kappa = 0.0;  // decay constant inside the plate (inf for a mirror)
};

/// F^s_2n and F^p_2n on the imaginary axis. At y = 0 the analytic xi -> 0+
/// limit is used (s -> 0, p -> (eps-1)/(eps+1)); a perfect mirror gives
/// s = -1, p = +1 for y > 0 and s = 0, p = 1 at y = 0.
GapReflection gap_reflection(double eps_plate, double y, double x);

}  // namespace nlcasimir
