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

// Adaptive Gauss-Kronrod quadrature on finite and semi-infinite ranges,
// nested 2-D integration and primed Matsubara sums.
//
// Integrands may return either a double or an IntegrationResult; in the
// latter case the inner error estimates and convergence flags are carried
// into the outer result, which is how the nested routines are built.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "nlcasimir/constants.hpp"
#include "nlcasimir/materials.hpp"

namespace nlcasimir {

struct IntegrationResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

struct QuadratureOptions {
  double rel_tol = 1e-6;
  double abs_tol = 0.0;
  std::size_t max_evaluations = 200'000;  // own integrand calls per integral, nested calls excluded
  std::size_t max_terms = 100'000;  // Matsubara terms per sum
  double scale = 1.0;               // x = scale * u / (1 - u) on [0, inf)

  /// Options handed to inner integrals of nested schemes.
  QuadratureOptions inner() const {
    QuadratureOptions o = *this;
    o.rel_tol = rel_tol * 0.25;
    o.abs_tol = abs_tol * 0.25;
    return o;
  }
};

inline void check_tolerance(double rel_tol) {
  if (!(rel_tol > 1e-14 && rel_tol < 1e-2)) {
    throw InvalidInput("relative tolerance must lie in (1e-14, 1e-2)");
  }
}

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class R>
inline constexpr bool is_result_v = std::is_same_v<std::decay_t<R>, IntegrationResult>;

struct Sample {
  double value;
  double inner_error;
  std::size_t inner_evaluations;
  bool inner_converged;
};

template <class F>
Sample sample(F& f, double x) {
  using R = std::invoke_result_t<F&, double>;
  if constexpr (is_result_v<R>) {
    const IntegrationResult r = f(x);
    return {r.value, r.abs_error, r.evaluations, r.converged};
  } else {
    return {static_cast<double>(f(x)), 0.0, 0, true};
  }
}

struct Panel {
  double a, b;
  double value, error, l1, inner_error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b, std::size_t& evaluations, bool& inner_converged) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, 15> fv{};
  std::array<double, 15> wv{};
  double inner_err = 0.0;
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const Sample s1 = sample(f, center - dx);
    const Sample s2 = sample(f, center + dx);
    fv[2 * j] = s1.value;
    fv[2 * j + 1] = s2.value;
    wv[2 * j] = wv[2 * j + 1] = kWgk[j];
    inner_err += kWgk[j] * (s1.inner_error + s2.inner_error);
    evaluations += 2 + s1.inner_evaluations + s2.inner_evaluations;
    inner_converged = inner_converged && s1.inner_converged && s2.inner_converged;
  }
  const Sample sc = sample(f, center);
  fv[14] = sc.value;
  wv[14] = kWgk[7];
  inner_err += kWgk[7] * sc.inner_error;
  evaluations += 1 + sc.inner_evaluations;
  inner_converged = inner_converged && sc.inner_converged;

  double kronrod = 0.0, abs_sum = 0.0;
  for (std::size_t i = 0; i < 15; ++i) {
    kronrod += wv[i] * fv[i];
    abs_sum += wv[i] * std::abs(fv[i]);
  }
  // Gauss nodes are the odd Kronrod abscissae (indices 1, 3, 5) and the center.
  double gauss = kWg[3] * fv[14];
  for (std::size_t j = 0; j < 3; ++j) {
    const std::size_t k = 2 * j + 1;
    gauss += kWg[j] * (fv[2 * k] + fv[2 * k + 1]);
  }
  const double mean = 0.5 * kronrod;
  double asc = 0.0;
  for (std::size_t i = 0; i < 15; ++i) asc += wv[i] * std::abs(fv[i] - mean);

  const double value = kronrod * half;
  const double l1 = abs_sum * std::abs(half);
  const double resasc = asc * std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (l1 > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * l1, err);

  if (!std::isfinite(value) || !std::isfinite(err)) {
    throw std::domain_error("quadrature: integrand returned a non-finite value");
  }
  return {a, b, value, err, l1, inner_err * std::abs(half)};
}

}  // namespace detail

/// Globally adaptive G7-K15 on [a, b]. Panels with the largest error estimate
/// are bisected until the estimate is below max(abs_tol, rel_tol |I|).
template <class F>
IntegrationResult integrate_interval(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  check_tolerance(opt.rel_tol);
  IntegrationResult out;
  if (a == b) return out;

  bool inner_ok = true;
  std::vector<detail::Panel> heap;
  heap.push_back(detail::gk15(f, a, b, out.evaluations, inner_ok));

  auto totals = [&heap] {
    double v = 0.0, e = 0.0, l1 = 0.0, ie = 0.0;
    for (const auto& p : heap) {
      v += p.value;
      e += p.error;
      l1 += p.l1;
      ie += p.inner_error;
    }
    return std::array<double, 4>{v, e, l1, ie};
  };

  bool converged = false;
  for (;;) {
    const auto [value, error, l1, inner] = totals();
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    if (error <= target || error <= 50.0 * std::numeric_limits<double>::epsilon() * l1) {
      converged = true;
      break;
    }
    if (15 * (2 * heap.size() + 1) > opt.max_evaluations) break;

    std::pop_heap(heap.begin(), heap.end());
    const detail::Panel worst = heap.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push_back(worst);  // interval exhausted at double precision
      std::push_heap(heap.begin(), heap.end());
      break;
    }
    heap.back() = detail::gk15(f, worst.a, mid, out.evaluations, inner_ok);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(detail::gk15(f, mid, worst.b, out.evaluations, inner_ok));
    std::push_heap(heap.begin(), heap.end());
  }

  // Sum in ascending-abscissa order so the result depends only on the panel set.
  std::sort(heap.begin(), heap.end(), [](const auto& p, const auto& q) { return p.a < q.a; });
  double value = 0.0, error = 0.0, inner = 0.0;
  for (const auto& p : heap) {
    value += p.value;
    error += p.error;
    inner += p.inner_error;
  }
  out.value = value;
  out.abs_error = std::hypot(error, inner);
  out.converged = converged && inner_ok;
  return out;
}

/// Integral over [0, inf) through x = s u / (1 - u).
template <class F>
IntegrationResult integrate_semi_infinite(F&& f, const QuadratureOptions& opt = {}) {
  const double s = opt.scale;
  if (!(s > 0.0)) throw InvalidInput("quadrature scale must be > 0");
  using R = std::invoke_result_t<F&, double>;
  auto mapped = [&f, s](double u) -> R {
    const double w = 1.0 - u;
    const double jac = s / (w * w);
    if constexpr (detail::is_result_v<R>) {
      IntegrationResult r = f(s * u / w);
      r.value *= jac;
      r.abs_error *= jac;
      return r;
    } else {
      return f(s * u / w) * jac;
    }
  };
  return integrate_interval(mapped, 0.0, 1.0, opt);
}

/// Integral of f(x, y) over [0, inf)^2: outer x, inner y, same node transform.
template <class F>
IntegrationResult integrate_2d(F&& f, const QuadratureOptions& opt = {}) {
  const QuadratureOptions inner = opt.inner();
  return integrate_semi_infinite(
      [&f, &inner](double x) {
        return integrate_semi_infinite([&f, x](double y) { return f(x, y); }, inner);
      },
      opt);
}

/// Matsubara frequencies xi_n = n * step in the caller's frequency variable.
/// In the zero-temperature limit step is only a bookkeeping scale: the sum is
/// replaced by (1/step) * integral, so step * sum is the T-independent quantity.
struct MatsubaraGrid {
  Temperature::Regime regime = Temperature::Regime::Zero;
  double step = 1.0;

  /// Grid for temperature T with frequencies measured in units of frequency_unit [rad/s].
  /// A zero-temperature state with kelvin = 0 gets step 1.
  static MatsubaraGrid for_temperature(const Temperature& t, double frequency_unit = 1.0) {
    if (!(frequency_unit > 0.0)) throw InvalidInput("frequency unit must be > 0");
    MatsubaraGrid g;
    g.regime = t.regime;
    g.step = t.kelvin > 0.0 ? 2.0 * constants::pi * t.thermal_energy() / constants::hbar / frequency_unit
                            : 1.0;
    return g;
  }
};

namespace detail {

template <class Term>
IntegrationResult primed_sum(Term& term, const MatsubaraGrid& grid, const QuadratureOptions& opt) {
  IntegrationResult out;
  std::array<double, 3> last{0.0, 0.0, 0.0};
  double inner_error = 0.0;
  for (std::size_t n = 0; n < opt.max_terms; ++n) {
    const double weight = n == 0 ? 0.5 : 1.0;
    const Sample s = sample(term, static_cast<double>(n) * grid.step);
    out.value += weight * s.value;
    inner_error += weight * s.inner_error;
    out.evaluations += 1 + s.inner_evaluations;
    out.converged = out.converged && s.inner_converged;
    last = {last[1], last[2], std::abs(s.value)};
    if (n < 3) continue;

    double tail;
    if (last[2] == 0.0 && last[1] == 0.0 && last[0] == 0.0) {
      tail = 0.0;
    } else {
      const double r1 = last[0] > 0.0 ? last[1] / last[0] : 1.0;
      const double r2 = last[1] > 0.0 ? last[2] / last[1] : 1.0;
      const double ratio = std::max(r1, r2);
      if (ratio >= 1.0) continue;
      tail = 2.0 * last[2] * ratio / (1.0 - ratio);
    }
    if (tail <= std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value))) {
      out.abs_error = tail + inner_error;
      return out;
    }
  }
  out.abs_error = std::numeric_limits<double>::infinity();
  out.converged = false;
  return out;
}

}  // namespace detail

/// Primed sum  sum'_n term(xi_n)  (n = 0 term halved). HighT keeps only the
/// halved n = 0 term; ZeroT returns (1/step) * integral_0^inf term.
template <class Term>
IntegrationResult matsubara_sum(Term&& term, const MatsubaraGrid& grid, const QuadratureOptions& opt = {}) {
  check_tolerance(opt.rel_tol);
  using Regime = Temperature::Regime;
  if (!(grid.step > 0.0)) throw InvalidInput("Matsubara step must be > 0");
  switch (grid.regime) {
    case Regime::High: {
      const detail::Sample s = detail::sample(term, 0.0);
      return {0.5 * s.value, 0.5 * s.inner_error, 1 + s.inner_evaluations, s.inner_converged};
    }
    case Regime::Zero: {
      IntegrationResult r = integrate_semi_infinite(term, opt);
      r.value /= grid.step;
      r.abs_error /= grid.step;
      return r;
    }
    case Regime::Finite: break;
  }
  return detail::primed_sum(term, grid, opt);
}

/// sum'_n sum'_m term(xi_n, xi_m) with independent tail control per index.
template <class Term>
IntegrationResult double_matsubara_sum(Term&& term, const MatsubaraGrid& grid,
                                       const QuadratureOptions& opt = {}) {
  check_tolerance(opt.rel_tol);
  using Regime = Temperature::Regime;
  if (!(grid.step > 0.0)) throw InvalidInput("Matsubara step must be > 0");
  if (grid.regime == Regime::High) {
    auto origin = [&term](double) { return term(0.0, 0.0); };
    const detail::Sample s = detail::sample(origin, 0.0);
    return {0.25 * s.value, 0.25 * s.inner_error, 1 + s.inner_evaluations, s.inner_converged};
  }
  const QuadratureOptions inner = opt.inner();
  auto outer_term = [&](double xi) {
    return matsubara_sum([&](double xi_p) { return term(xi, xi_p); }, grid, inner);
  };
  return matsubara_sum(outer_term, grid, opt);
}

}  // namespace nlcasimir
