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

#include "nlcasimir/lifshitz_nonlinear.hpp"

#include <array>
#include <cmath>

#include "nlcasimir/constants.hpp"
#include "nlcasimir/fresnel.hpp"

namespace nlcasimir {

namespace {

using constants::pi;

constexpr double kReferenceGap = 1e-6;
constexpr double kReferenceKelvin = 300.0;

double sq(double v) { return v * v; }

// -(3 / 128 pi^6) (chi3/eps0) (hbar c / d^4)^2: converts step^2 * (double sum of
// weighted kernels) into a pressure.
double nonlinear_prefactor(double chi3, double d) {
  const double u = constants::hbar * constants::c / std::pow(d, 4);
  return -3.0 / (128.0 * std::pow(pi, 6)) * chi3 / constants::epsilon_0 * u * u;
}

double cavity(double r, double kappa2) {
  // 1 / (1 - r e^{-2 kappa2}) written to stay finite when e^{-2 kappa2} underflows.
  const double den = -std::expm1(-2.0 * kappa2) + (1.0 - r) * std::exp(-2.0 * kappa2);
  if (std::abs(den) < 1e-14) throw SingularPointError("cavity factor: multiple-reflection pole");
  return 1.0 / den;
}

// Primed-side C_sigma = (F23 - F21^2 F23) * cavity.
double c_s(const KernelSide& s) { return s.f23_s * (1.0 - sq(s.f21_s)) * cavity_s(s); }
double c_p(const KernelSide& s) { return s.f23_p * (1.0 - sq(s.f21_p)) * cavity_p(s); }

// Unprimed-side X_sigma / q' = x (kappa2^2/kappa1^2) F23 ((1 - F21) cavity)^2.
double x_s(const KernelSide& s) {
  return s.x * sq(s.kappa2 / s.kappa1) * s.f23_s * sq((1.0 - s.f21_s) * cavity_s(s));
}
double x_p(const KernelSide& s) {
  return s.x * sq(s.kappa2 / s.kappa1) * s.f23_p * sq((1.0 - s.f21_p) * cavity_p(s));
}

// e^{-2(kappa2 + kappa2')} / ((kappa1 + kappa1') kappa1').
double coupling(const NlKernelPoint& pt) {
  const auto& u = pt.unprimed;
  const auto& v = pt.primed;
  return std::exp(-2.0 * (u.kappa2 + v.kappa2)) / ((u.kappa1 + v.kappa1) * v.kappa1);
}

struct PlateModels {
  Permittivity eps1;
  Permittivity eps3;
  double freq_unit;  // c / d
};

// Resolves which plate is nonlinear. Returns false when the correction vanishes.
bool nonlinear_setup(const LayerStack& stack, LayerStack& out) {
  const bool nl1 = stack.nonlinear_plate().chi3 != 0.0;
  const bool nl3 = stack.linear_plate().chi3 != 0.0;
  if (!nl1 && !nl3) return false;
  out = nl1 ? stack : stack.swapped();
  return !out.nonlinear_plate().epsilon.is_perfect_mirror();
}

IntegrationResult factorized_sum(const PlateModels& m, const MatsubaraGrid& grid, const QuadratureOptions& opt) {
  const QuadratureOptions inner = opt.inner();
  const QuadratureOptions inner2 = inner.inner();

  // sum'_n int dx g(y_n, x) e^{-t kappa1} for one of the four side factors.
  auto side_sum = [&](double t, double SideFactors::*field) {
    return matsubara_sum(
        [&](double y) {
          const double e1 = m.eps1.at(y * m.freq_unit);
          const double e3 = m.eps3.at(y * m.freq_unit);
          return integrate_semi_infinite(
              [&](double x) {
                const SideFactors f = side_factors(make_kernel_side(e1, e3, y, x));
                return f.*field * std::exp(-t * f.kappa1);
              },
              inner2);
        },
        grid, inner);
  };

  auto t_integrand = [&](double t) {
    const IntegrationResult aa = side_sum(t, &SideFactors::alpha);
    const IntegrationResult ab = side_sum(t, &SideFactors::beta);
    const IntegrationResult bx = side_sum(t, &SideFactors::mx);
    const IntegrationResult bz = side_sum(t, &SideFactors::mz);
    IntegrationResult r;
    r.value = aa.value * bx.value + ab.value * bz.value;
    r.abs_error = std::abs(aa.value) * bx.abs_error + std::abs(bx.value) * aa.abs_error +
                  std::abs(ab.value) * bz.abs_error + std::abs(bz.value) * ab.abs_error;
    r.evaluations = aa.evaluations + ab.evaluations + bx.evaluations + bz.evaluations;
    r.converged = aa.converged && ab.converged && bx.converged && bz.converged;
    return r;
  };
  return integrate_semi_infinite(t_integrand, opt);
}

IntegrationResult direct_sum(const PlateModels& m, const MatsubaraGrid& grid, const QuadratureOptions& opt) {
  const QuadratureOptions inner = opt.inner().inner();
  auto term = [&](double y, double y_p) {
    const double e1 = m.eps1.at(y * m.freq_unit), e3 = m.eps3.at(y * m.freq_unit);
    const double e1p = m.eps1.at(y_p * m.freq_unit), e3p = m.eps3.at(y_p * m.freq_unit);
    return integrate_2d(
        [&](double x, double x_p) {
          const NlKernelPoint pt{make_kernel_side(e1, e3, y, x), make_kernel_side(e1p, e3p, y_p, x_p)};
          return weighted_kernel(pt);
        },
        inner);
  };
  return double_matsubara_sum(term, grid, opt);
}

}  // namespace

KernelSide make_kernel_side(double eps1, double eps3, double y, double x) {
  if (!std::isfinite(eps1)) throw InvalidInput("nonlinear plate permittivity must be finite");
  if (!(y >= 0.0) || !(x >= 0.0)) throw InvalidInput("kernel coordinates must be >= 0");
  const GapReflection r1 = gap_reflection(eps1, y, x);
  const GapReflection r3 = gap_reflection(eps3, y, x);
  KernelSide s;
  s.y = y;
  s.x = x;
  s.eps1 = eps1;
  s.kappa1 = r1.kappa;
  s.kappa2 = decay_constant(1.0, y, x);
  s.f21_s = r1.s;
  s.f21_p = r1.p;
  s.f23_s = r3.s;
  s.f23_p = r3.p;
  return s;
}

NlKernelPoint make_kernel_point(const LayerStack& stack, double xi, double q, double xi_p, double q_p) {
  const double d = stack.gap_width();
  const auto& e1 = stack.nonlinear_plate();
  const auto& e3 = stack.linear_plate();
  return {make_kernel_side(epsilon_at(e1, xi), epsilon_at(e3, xi), xi * d / constants::c, q * d),
          make_kernel_side(epsilon_at(e1, xi_p), epsilon_at(e3, xi_p), xi_p * d / constants::c, q_p * d)};
}

double thermal_weight_a(double omega, const Temperature& t) {
  if (!(omega >= 0.0)) throw InvalidInput("thermal_weight_a: omega must be >= 0");
  const double base = constants::hbar / (pi * constants::epsilon_0) * sq(omega / constants::c);
  switch (t.regime) {
    case Temperature::Regime::Zero: return base;
    case Temperature::Regime::High:
      return 2.0 * omega * t.thermal_energy() / (pi * constants::epsilon_0 * sq(constants::c));
    case Temperature::Regime::Finite: break;
  }
  if (omega == 0.0) return 0.0;
  return base / std::tanh(constants::hbar * omega / (2.0 * t.thermal_energy()));
}

double matsubara_residue_weight(int n, const Temperature& t) {
  if (n < 0) throw InvalidInput("Matsubara index must be >= 0");
  const double kt = t.thermal_energy();
  const double xi = 2.0 * pi * n * kt / constants::hbar;
  const double w = 4.0 * kt * xi * xi / (constants::epsilon_0 * sq(constants::c));
  return n == 0 ? 0.5 * w : w;
}

double cavity_s(const KernelSide& s) { return cavity(s.f21_s * s.f23_s, s.kappa2); }
double cavity_p(const KernelSide& s) { return cavity(s.f21_p * s.f23_p, s.kappa2); }

double m_x(const NlKernelPoint& point) {
  const auto& v = point.primed;
  if (!(v.y > 0.0)) throw SingularPointError("M_x needs y' > 0");
  return 2.0 * c_s(v) - (3.0 * sq(v.x) / (v.eps1 * sq(v.y)) + 2.0) * c_p(v);
}

double m_z(const NlKernelPoint& point) {
  const auto& v = point.primed;
  if (!(v.y > 0.0)) throw SingularPointError("M_z needs y' > 0");
  return c_s(v) - (4.0 * sq(v.x) / (v.eps1 * sq(v.y)) + 1.0) * c_p(v);
}

double m_x_weighted(const KernelSide& v) {
  return 2.0 * sq(v.y) * c_s(v) - (3.0 * sq(v.x) / v.eps1 + 2.0 * sq(v.y)) * c_p(v);
}

double m_z_weighted(const KernelSide& v) {
  return sq(v.y) * c_s(v) - (4.0 * sq(v.x) / v.eps1 + sq(v.y)) * c_p(v);
}

double pnl_integrand(const NlKernelPoint& point) {
  const auto& u = point.unprimed;
  if (!(u.y > 0.0)) throw SingularPointError("S + P needs y > 0");
  const double mx = m_x(point);
  const double mz = m_z(point);
  const double qq = point.primed.x;
  const double dd = coupling(point);
  const double s = -x_s(u) * qq * dd * mx;
  const double p = x_p(u) * qq * dd * (sq(u.x) * mz + sq(u.kappa1) * mx) / sq(u.y);
  return s + p;
}

double weighted_kernel(const NlKernelPoint& point) {
  const auto& u = point.unprimed;
  const double mx = m_x_weighted(point.primed);
  const double mz = m_z_weighted(point.primed);
  const double qd = point.primed.x * coupling(point);
  return qd * (-sq(u.y) * x_s(u) * mx + x_p(u) * (sq(u.x) * mz + sq(u.kappa1) * mx));
}

SideFactors side_factors(const KernelSide& s) {
  const double decay = std::exp(-2.0 * s.kappa2);
  const double as = x_s(s) * decay;
  const double ap = x_p(s) * decay;
  SideFactors f;
  f.alpha = ap * sq(s.kappa1) - sq(s.y) * as;
  f.beta = ap * sq(s.x);
  const double w = s.x * decay / s.kappa1;
  f.mx = w * m_x_weighted(s);
  f.mz = w * m_z_weighted(s);
  f.kappa1 = s.kappa1;
  return f;
}

PressureTerm pressure_nonlinear(const LayerStack& stack, const QuadratureOptions& opt, NonlinearMethod method) {
  check_tolerance(opt.rel_tol);
  LayerStack st = stack;
  if (!nonlinear_setup(stack, st)) return {};

  const double d = st.gap_width();
  const PlateModels models{st.nonlinear_plate().epsilon, st.linear_plate().epsilon, constants::c / d};
  const MatsubaraGrid grid = MatsubaraGrid::for_temperature(st.temperature(), models.freq_unit);
  const IntegrationResult sum =
      method == NonlinearMethod::Factorized ? factorized_sum(models, grid, opt) : direct_sum(models, grid, opt);
  return to_pressure_term(sum, nonlinear_prefactor(st.nonlinear_plate().chi3, d) * sq(grid.step));
}

PressureResult casimir_pressure(const LayerStack& stack, const QuadratureOptions& opt) {
  PressureResult r;
  r.regime = stack.temperature().regime;
  r.linear = pressure_linear(stack, opt);
  r.nonlinear = pressure_nonlinear(stack, opt);
  r.total = r.linear.value + r.nonlinear.value;
  r.total_error = r.linear.abs_error + r.nonlinear.abs_error;
  r.converged = r.linear.converged && r.nonlinear.converged;
  return r;
}

IntegrationResult i_nl(const MaterialResponse& nonlinear_plate, const MaterialResponse& linear_plate,
                       Temperature::Regime regime, double d, const QuadratureOptions& opt) {
  using Regime = Temperature::Regime;
  if (regime == Regime::Finite) throw InvalidInput("I_nl is defined only in the T = 0 and high-T limits");
  const Temperature t = regime == Regime::Zero ? Temperature::zero() : Temperature::high(kReferenceKelvin);
  MaterialResponse nl = nonlinear_plate;
  MaterialResponse lin = linear_plate;
  nl.chi3 = 1.0;
  lin.chi3 = 0.0;
  const PressureTerm p = pressure_nonlinear(LayerStack(nl, lin, d, t), opt);
  const double unit = regime == Regime::Zero ? constants::hbar * constants::c / std::pow(d, 4)
                                             : t.thermal_energy() / std::pow(d, 3);
  const double scale = 1.0 / constants::epsilon_0 * unit * unit;
  return {p.value / scale, p.abs_error / scale, p.evaluations, p.converged};
}

IntegrationResult i_nl_zero_T(double eps_nl, double eps_lin, const QuadratureOptions& opt) {
  return i_nl({Permittivity::from_value(eps_nl), 1.0}, {Permittivity::from_value(eps_lin), 0.0},
              Temperature::Regime::Zero, kReferenceGap, opt);
}

IntegrationResult i_nl_high_T(double eps_nl, double eps_lin, const QuadratureOptions& opt) {
  return i_nl({Permittivity::from_value(eps_nl), 1.0}, {Permittivity::from_value(eps_lin), 0.0},
              Temperature::Regime::High, kReferenceGap, opt);
}

double mirror_polynomial(double y, double x, double y_p, double x_p, MirrorPolynomial poly) {
  // Imaginary axis: k^2 = -y^2, q^2 = x^2.
  const double k2 = -sq(y), q2 = sq(x), k2p = -sq(y_p), q2p = sq(x_p);
  if (poly == MirrorPolynomial::Printed) {
    return k2 * (4.0 * k2p - 3.0 * q2p) - q2 * (6.0 * k2p - 7.0 * q2p);
  }
  // Coincident reflected Green's function of a perfect mirror, diag(U, U, W),
  // contracted with the isotropic chi3 tensor at unit strength. Only the iikk
  // pattern survives for diagonal G.
  const std::array<double, 3> g{-(2.0 * k2 - q2) / 2.0, -(2.0 * k2 - q2) / 2.0, q2};
  const std::array<double, 3> gp{-(2.0 * k2p - q2p) / 2.0, -(2.0 * k2p - q2p) / 2.0, q2p};
  const MaterialResponse unit{Permittivity::constant(1.0), 1.0};
  constexpr std::array<Axis, 3> axes{Axis::x, Axis::y, Axis::z};
  double n = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      n += chi3_contract(unit, axes[i], axes[i], axes[k], axes[k]) * g[i] * gp[k];
    }
  }
  return n;
}

PressureTerm pressure_transparent_mirror(double d, const Temperature& t, double chi3, const QuadratureOptions& opt,
                                         MirrorPolynomial poly) {
  check_tolerance(opt.rel_tol);
  if (!(d > 0.0)) throw InvalidInput("gap width must be > 0");
  if (chi3 == 0.0) return {};
  const double pref = nonlinear_prefactor(chi3, d);
  const QuadratureOptions inner = opt.inner();

  if (t.regime == Temperature::Regime::Zero) {
    // y = r sin(theta), x = r cos(theta): the weighted kernel separates into
    // -r^4 r'^3 e^{-2(r + r')} / (r + r')  times  cos(theta) cos(theta') n(theta, theta').
    const IntegrationResult radial = integrate_2d(
        [](double r, double rp) {
          return std::pow(r, 4) * std::pow(rp, 3) * std::exp(-2.0 * (r + rp)) / (r + rp);
        },
        opt);
    const IntegrationResult angular = integrate_interval(
        [&](double th) {
          return integrate_interval(
              [&](double thp) {
                return std::cos(th) * std::cos(thp) *
                       mirror_polynomial(std::sin(th), std::cos(th), std::sin(thp), std::cos(thp), poly);
              },
              0.0, pi / 2.0, inner);
        },
        0.0, pi / 2.0, opt);
    IntegrationResult j;
    j.value = -radial.value * angular.value;
    j.abs_error = std::abs(radial.value) * angular.abs_error + std::abs(angular.value) * radial.abs_error;
    j.evaluations = radial.evaluations + angular.evaluations;
    j.converged = radial.converged && angular.converged;
    return to_pressure_term(j, pref);
  }

  const MatsubaraGrid grid = MatsubaraGrid::for_temperature(t, constants::c / d);
  auto term = [&](double y, double y_p) {
    return integrate_2d(
        [&](double x, double x_p) {
          const double k = std::hypot(y, x), kp = std::hypot(y_p, x_p);
          return -x * x_p * std::exp(-2.0 * (k + kp)) / ((k + kp) * kp) * mirror_polynomial(y, x, y_p, x_p, poly);
        },
        inner.inner());
  };
  const IntegrationResult sum = double_matsubara_sum(term, grid, opt);
  return to_pressure_term(sum, pref * sq(grid.step));
}

CrossoverResult crossover_distance(const LayerStack& stack, const QuadratureOptions& opt) {
  CrossoverResult out;
  LayerStack st = stack;
  if (!nonlinear_setup(stack, st)) return out;

  // g(d) = ln|P_nl| - ln|P_lin|; NaN when either term vanishes.
  auto g = [&](double log_d) {
    const PressureResult p = casimir_pressure(st.with_gap(std::exp(log_d)), opt);
    out.converged = out.converged && p.converged;
    ++out.iterations;
    if (p.linear.value == 0.0 || p.nonlinear.value == 0.0) return std::nan("");
    return std::log(std::abs(p.nonlinear.value)) - std::log(std::abs(p.linear.value));
  };

  double lo = std::log(kCrossoverMin), hi = std::log(kCrossoverMax);
  double g_lo = g(lo), g_hi = g(hi);
  if (std::isnan(g_lo) || std::isnan(g_hi) || (g_lo > 0.0) == (g_hi > 0.0)) return out;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(mid);
    if (std::isnan(g_mid)) {
      out.converged = false;
      return out;
    }
    if ((g_mid > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  out.distance = std::exp(0.5 * (lo + hi));
  return out;
}

}  // namespace nlcasimir
