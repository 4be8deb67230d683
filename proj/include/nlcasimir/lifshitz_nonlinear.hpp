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

#include <optional>

#include "nlcasimir/lifshitz_linear.hpp"
#include "nlcasimir/materials.hpp"
#include "nlcasimir/quadrature.hpp"

namespace nlcasimir {

// Kernel quantities are evaluated on the imaginary axis in gap units:
// y = xi d / c, x = q d, kappa_n = sqrt(eps_n y^2 + x^2). Layer 1 is the
// nonlinear plate, 2 the gap and 3 the linear plate.

/// One (frequency, momentum) side of the kernel.
struct KernelSide {
  double y = 0.0;
  double x = 0.0;
  double eps1 = 1.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double f21_s = 0.0, f21_p = 0.0;
  double f23_s = 0.0, f23_p = 0.0;
};

/// Builds a side from the plate permittivities at this frequency. eps1 must be
/// finite (a mirror carries no field inside); eps3 may be +inf.
KernelSide make_kernel_side(double eps1, double eps3, double y, double x);

struct NlKernelPoint {
  KernelSide unprimed;
  KernelSide primed;
};

/// Converts SI (xi, q, xi', q') at gap width d into a kernel point.
NlKernelPoint make_kernel_point(const LayerStack& stack, double xi, double q, double xi_p, double q_p);

/// Real-axis thermal weight a(omega) = (hbar / pi eps0)(omega^2/c^2) coth(hbar omega / 2 k_B T) [SI].
double thermal_weight_a(double omega, const Temperature& t);

/// w_n such that  int_R a(omega) f(omega) d omega = -i sum_n w_n f(i xi_n)  for f
/// analytic in the upper half plane; w_n = 4 k_B T xi_n^2 / (eps0 c^2), halved at n = 0.
double matsubara_residue_weight(int n, const Temperature& t);

/// Cavity factor 1 / (1 - F21 F23 exp(-2 kappa2)) per polarization.
double cavity_s(const KernelSide& s);
double cavity_p(const KernelSide& s);

/// M_x and M_z of the primed side. Both carry 1/y'^2 and require y' > 0.
double m_x(const NlKernelPoint& point);
double m_z(const NlKernelPoint& point);

/// y'^2 M_x and y'^2 M_z, finite at y' = 0.
double m_x_weighted(const KernelSide& primed);
double m_z_weighted(const KernelSide& primed);

/// S + P on the imaginary axis; requires y, y' > 0.
double pnl_integrand(const NlKernelPoint& point);

/// y^2 y'^2 (S + P), the summand of the double Matsubara sum; finite at y = 0 or y' = 0.
double weighted_kernel(const NlKernelPoint& point);

/// Per-side factors of the weighted kernel:
///   weighted_kernel = (alpha * mx' + beta * mz') / (kappa1 + kappa1').
struct SideFactors {
  double alpha = 0.0;
  double beta = 0.0;
  double mx = 0.0;
  double mz = 0.0;
  double kappa1 = 0.0;
};
SideFactors side_factors(const KernelSide& s);

enum class NonlinearMethod {
  Factorized,  // 1/(k1 + k1') as a Laplace integral; 4-D problem becomes 1-D of 2-D sums
  Direct,      // double Matsubara sum of the 2-D momentum integral
};

/// First-order chi3 correction to the plate pressure [Pa]; positive is attractive.
PressureTerm pressure_nonlinear(const LayerStack& stack, const QuadratureOptions& opt = {},
                                NonlinearMethod method = NonlinearMethod::Factorized);

/// P_lin + P_nl.
PressureResult casimir_pressure(const LayerStack& stack, const QuadratureOptions& opt = {});

/// Dimensionless I_nl with P_nl = (chi3/eps0)(hbar c/d^4)^2 I_nl at T = 0 and
/// P_nl = (chi3/eps0)(k_B T/d^3)^2 I_nl in the high-temperature limit.
IntegrationResult i_nl_zero_T(double eps_nl, double eps_lin, const QuadratureOptions& opt = {});
IntegrationResult i_nl_high_T(double eps_nl, double eps_lin, const QuadratureOptions& opt = {});
IntegrationResult i_nl(const MaterialResponse& nonlinear_plate, const MaterialResponse& linear_plate,
                       Temperature::Regime regime, double d, const QuadratureOptions& opt = {});

/// Momentum polynomial of the transparent-plate / mirror force.
enum class MirrorPolynomial {
  Contraction,  // isotropic chi3 contraction of the mirror's coincident Green's functions
  Printed,      // k^2(4k'^2 - 3q'^2) - q^2(6k'^2 - 7q'^2)
};

/// N(xi, q, xi', q') in gap units (k^2 = -y^2, q^2 = x^2), without the q q' factor.
double mirror_polynomial(double y, double x, double y_p, double x_p, MirrorPolynomial poly);

/// Force per area [Pa] on a transparent chi3 plate facing a perfect mirror.
/// Independent of pressure_nonlinear: polar-coordinate separation at T = 0,
/// direct sums of momentum integrals otherwise.
PressureTerm pressure_transparent_mirror(double d, const Temperature& t, double chi3,
                                         const QuadratureOptions& opt = {},
                                         MirrorPolynomial poly = MirrorPolynomial::Contraction);

struct CrossoverResult {
  std::optional<double> distance;  // d* [m]; empty when no crossover in range
  int iterations = 0;
  bool converged = true;
};

inline constexpr double kCrossoverMin = 1e-11;
inline constexpr double kCrossoverMax = 1e-4;

/// d* with |P_nl(d*)| = |P_lin(d*)|, bisection on log d over [1e-11, 1e-4] m.
CrossoverResult crossover_distance(const LayerStack& stack, const QuadratureOptions& opt = {});

}  // namespace nlcasimir
