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

// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "nlcasimir/constants.hpp"
#include "nlcasimir/lifshitz_linear.hpp"
#include "nlcasimir/lifshitz_nonlinear.hpp"
#include "nlcasimir/materials.hpp"
#include "nlcasimir/operator_lab.hpp"

using namespace nlcasimir;
namespace k = nlcasimir::constants;

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass = true;
  std::string detail;
};

void note(Outcome& o, bool ok, const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += buf;
  o.pass = o.pass && ok;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

QuadratureOptions tight(double rel_tol) {
  QuadratureOptions o;
  o.rel_tol = rel_tol;
  return o;
}

MaterialResponse plate(double eps, double chi3 = 0.0) { return {Permittivity::from_value(eps), chi3}; }

double least_squares_slope(const std::vector<double>& d, const std::vector<double>& p) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double x = std::log(d[i]), y = std::log(std::abs(p[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome c1_mirror_quantum() {
  Outcome o;
  const double d = 1e-6;
  const auto t0 = Clock::now();
  const PressureTerm p = pressure_linear(LayerStack(plate(kInf), plate(kInf), d, Temperature::zero()), tight(1e-9));
  const double dt = seconds_since(t0);
  const double exact = k::pi * k::pi * k::hbar * k::c / (240.0 * std::pow(d, 4));
  note(o, rel_diff(p.value, exact) <= 1e-6, "rel err %.2e (<= 1e-6)", rel_diff(p.value, exact));
  note(o, dt < 10.0, "runtime %.3f s (< 10 s)", dt);
  return o;
}

Outcome c2_mirror_thermal() {
  Outcome o;
  const Temperature t = Temperature::high(300.0);
  for (double d : {1e-7, 1e-6, 1e-5}) {
    const PressureTerm p = pressure_linear(LayerStack(plate(kInf), plate(kInf), d, t), tight(1e-9));
    const double exact = k::zeta3 * t.thermal_energy() / (8.0 * k::pi * std::pow(d, 3));
    note(o, rel_diff(p.value, exact) <= 1e-6, "d=%.0e rel err %.2e", d, rel_diff(p.value, exact));
  }
  return o;
}

Outcome c3_scaling() {
  Outcome o;
  const auto t0 = Clock::now();
  std::vector<double> d;
  for (int i = 0; i <= 4; ++i) d.push_back(1e-8 * std::pow(10.0, i / 4.0));
  struct Case {
    Temperature t;
    double lin, nl;
  };
  for (const Case& c : {Case{Temperature::zero(), -4.0, -8.0}, Case{Temperature::high(300.0), -3.0, -6.0}}) {
    std::vector<double> pl, pn;
    for (double di : d) {
      const PressureResult r = casimir_pressure(LayerStack(plate(2.0, 2e-16), plate(10.0), di, c.t), tight(1e-8));
      pl.push_back(r.linear.value);
      pn.push_back(r.nonlinear.value);
    }
    const double sl = least_squares_slope(d, pl), sn = least_squares_slope(d, pn);
    const bool zero = c.t.regime == Temperature::Regime::Zero;
    note(o, std::abs(sl - c.lin) <= 1e-2 && std::abs(sn - c.nl) <= 1e-2,
         zero ? "T=0 slopes lin %.6f nl %.6f" : "high-T slopes lin %.6f nl %.6f", sl, sn);
  }
  const double dt = seconds_since(t0);
  note(o, dt < 600.0, "runtime %.1f s (< 600 s)", dt);
  return o;
}

Outcome c4_dual_path() {
  Outcome o;
  const double chi = 2e-16;
  const LayerStack base(plate(1.0, chi), plate(kInf), 1e-8, Temperature::zero());
  for (const Temperature& t : {Temperature::zero(), Temperature::finite(300.0)}) {
    for (double d : {1e-8, 1e-7, 1e-6}) {
      if (t.regime == Temperature::Regime::Finite && d < 1e-7) continue;  // ~10^4 Matsubara terms per axis
      const PressureTerm a = pressure_nonlinear(base.with_gap(d).with_temperature(t), tight(1e-7));
      const PressureTerm b = pressure_transparent_mirror(d, t, chi, tight(1e-7));
      note(o, rel_diff(a.value, b.value) <= 1e-4, "T=%g d=%.0e rel diff %.2e", t.kelvin, d, rel_diff(a.value, b.value));
    }
  }
  return o;
}

Outcome c5_structure() {
  Outcome o;
  std::vector<double> by_nl, by_lin;
  for (double e : {1.0, 2.0, 5.0, 10.0, 100.0}) by_nl.push_back(i_nl_zero_T(e, kInf, tight(1e-8)).value);
  for (double e : {2.0, 10.0, kInf}) by_lin.push_back(i_nl_zero_T(1.0, e, tight(1e-8)).value);
  bool dec = true, inc = true;
  for (std::size_t i = 1; i < by_nl.size(); ++i) dec = dec && std::abs(by_nl[i]) < std::abs(by_nl[i - 1]);
  for (std::size_t i = 1; i < by_lin.size(); ++i) inc = inc && std::abs(by_lin[i]) > std::abs(by_lin[i - 1]);
  note(o, dec, "I_nl(eps_nl) decreasing: %g, I_nl(1)=%.4e", dec, by_nl.front());
  const double ratio = std::abs(by_nl.back() / by_nl.front());
  note(o, ratio < 0.05, "I_nl(100)/I_nl(1) = %.3e (< 0.05)", ratio);
  note(o, inc, "I_nl(eps_lin) increasing: %g, I_nl(eps_lin=2)=%.4e", inc, by_lin.front());
  return o;
}

Outcome c6_crossover() {
  Outcome o;
  constexpr double kFrozen = 17.0654031715e-9;  // eps_nl = 1.01, eps_lin = inf, chi3 = 2e-16, T = 0
  const LayerStack s(plate(1.01, 2e-16), plate(kInf), 1e-8, Temperature::zero());
  const CrossoverResult r = crossover_distance(s, tight(1e-8));
  if (!r.distance) {
    note(o, false, "no crossover found after %g iterations", r.iterations);
    return o;
  }
  const double d = *r.distance;
  note(o, d >= 0.5e-9 && d <= 50e-9, "d* = %.6f nm (in [0.5, 50] nm)", d * 1e9);
  note(o, rel_diff(d, kFrozen) <= 1e-8, "frozen %.10f nm, rel diff %.2e", kFrozen * 1e9, rel_diff(d, kFrozen));
  return o;
}

std::map<std::string, lab::CheckResult> lab_checks(double& runtime) {
  const auto t0 = Clock::now();
  std::map<std::string, lab::CheckResult> out;
  for (const auto& c : lab::run_verification(lab::LabConfig{})) out[c.name] = c;
  runtime = seconds_since(t0);
  return out;
}

Outcome from_lab(const std::map<std::string, lab::CheckResult>& checks, const std::vector<std::string>& names) {
  Outcome o;
  for (const auto& n : names) {
    const lab::CheckResult& c = checks.at(n);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.3e %s %.1e", n.c_str(), c.value, c.relation.c_str(), c.threshold);
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += buf;
    o.pass = o.pass && c.pass;
  }
  return o;
}

Outcome c10_symmetry(const std::map<std::string, lab::CheckResult>& checks) {
  Outcome o = from_lab(checks, {"reciprocity"});
  const MaterialResponse nl = plate(2.0), lin = plate(10.0);
  double worst = 0.0;
  for (auto regime : {Temperature::Regime::Zero, Temperature::Regime::High}) {
    const double ref_lin = i_lin(nl, lin, regime, 1e-6, tight(1e-10)).value;
    const double ref_nl = i_nl(nl, lin, regime, 1e-6, tight(1e-10)).value;
    for (double d : {1e-8, 1e-7}) {
      worst = std::max(worst, rel_diff(i_lin(nl, lin, regime, d, tight(1e-10)).value, ref_lin));
      worst = std::max(worst, rel_diff(i_nl(nl, lin, regime, d, tight(1e-10)).value, ref_nl));
    }
  }
  note(o, worst <= 1e-6, "I_lin/I_nl spread over d in {1e-8, 1e-7, 1e-6}: %.2e (<= 1e-6)", worst);
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&failures](int id, const char* title, const std::function<Outcome()>& run) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d (%s) [%.1f s]: %s\n", o.pass ? "PASS" : "FAIL", id, title, seconds_since(t0),
                o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  };

  report(1, "ideal-mirror quantum limit", c1_mirror_quantum);
  report(2, "ideal-mirror thermal limit", c2_mirror_thermal);
  report(3, "scaling exponents", c3_scaling);
  report(4, "transparent plate against mirror", c4_dual_path);
  report(5, "material dependence of I_nl", c5_structure);
  report(6, "crossover distance", c6_crossover);

  double lab_runtime = 0.0;
  std::map<std::string, lab::CheckResult> checks;
  report(7, "operator-lab exact identities", [&] {
    checks = lab_checks(lab_runtime);
    Outcome o = from_lab(checks, {"lippmann_schwinger_chi0", "combination_oracle_chi0", "rytov_residual_chi0"});
    note(o, lab_runtime < 60.0, "runtime %.2f s (< 60 s)", lab_runtime);
    return o;
  });
  report(8, "first-order chi^2 scaling",
         [&] { return from_lab(checks, {"combined_correction_chi2_slope_error", "rytov_chi2_slope_error"}); });
  report(9, "Monte-Carlo fluctuation-dissipation", [&] {
    return from_lab(checks, {"mc_clt_ratio_factor", "mc_sqrt_m_decay_factor", "mc_seed_reproducible"});
  });
  report(10, "symmetry suite", [&] { return c10_symmetry(checks); });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
