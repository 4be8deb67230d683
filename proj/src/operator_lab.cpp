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

#include "nlcasimir/operator_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "nlcasimir/constants.hpp"
#include "nlcasimir/materials.hpp"

namespace nlcasimir::lab {

namespace {

using cd = std::complex<double>;

constexpr int kStreams = 16;
constexpr double kMinRcond = 1e-14;

double rel_norm(const Matrix& a, const Matrix& ref) { return a.norm() / ref.norm(); }

double asymmetry(const Matrix& a) { return (a - a.transpose()).norm() / a.norm(); }

Vector masked(const Vector& v, const Mask& m) { return (m.cast<double>().matrix().cast<cd>()).cwiseProduct(v); }

double max_im_diag(const Matrix& g) { return g.diagonal().imag().maxCoeff(); }

}  // namespace

void Grid1D::validate() const {
  if (n_points < 8 || n_points > 256) throw InvalidInput("grid needs 8..256 points");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw InvalidInput("grid spacing must be > 0");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidInput("absorber eta must be > 0");
}

Matrix im(const Matrix& a) { return a.imag().cast<cd>(); }

LinearOperators build_linear(const Grid1D& grid, const RealVector& eps, double omega) {
  grid.validate();
  const int n = grid.n_points;
  if (eps.size() != n) throw InvalidInput("permittivity profile length must equal n_points");
  if (omega == 0.0 || !std::isfinite(omega)) throw InvalidInput("omega must be finite and nonzero");
  if ((eps.array() < 1.0).any()) throw InvalidInput("permittivity profile must be >= 1");

  const double k0 = omega / constants::c;
  const double k2 = k0 * k0;
  const double inv_h2 = 1.0 / (grid.spacing * grid.spacing);
  const cd absorber{0.0, omega > 0.0 ? -grid.eta : grid.eta};

  LinearOperators ops;
  ops.h0 = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    ops.h0(i, i) = 2.0 * inv_h2 - k2 + absorber;
    if (i + 1 < n) ops.h0(i, i + 1) = ops.h0(i + 1, i) = -inv_h2;
  }
  ops.v = (k2 * (eps.array() - 1.0)).matrix().cast<cd>().asDiagonal();

  const Eigen::PartialPivLU<Matrix> lu0(ops.h0);
  const Eigen::PartialPivLU<Matrix> lu1(ops.h0 - ops.v);
  ops.rcond = std::min(lu0.rcond(), lu1.rcond());
  if (ops.rcond < kMinRcond) throw NearResonanceError("Helmholtz matrix is numerically singular", ops.rcond);
  ops.g0 = lu0.inverse();
  ops.g1 = lu1.inverse();
  return ops;
}

Vector build_n_operator(const Grid1D& grid, const RealVector& eps, const Vector& chi, double omega,
                        const std::vector<FrequencyWeight>& weights) {
  if (weights.empty()) throw InvalidInput("N operator needs at least one frequency weight");
  if (chi.size() != grid.n_points) throw InvalidInput("chi profile length must equal n_points");
  RealVector fluct = RealVector::Zero(grid.n_points);
  for (const auto& [w_omega, w] : weights) {
    if (!(w > 0.0)) throw InvalidInput("frequency weights must be > 0");
    fluct += w * build_linear(grid, eps, std::abs(w_omega)).g1.diagonal().imag();
  }
  const double k0 = omega / constants::c;
  const Vector chi_w = omega > 0.0 ? chi : Vector(chi.conjugate());
  return 3.0 * k0 * k0 * chi_w.cwiseProduct(fluct.cast<cd>());
}

Matrix gtilde(const Matrix& g1, const Vector& n) {
  if (n.size() != g1.rows()) throw InvalidInput("gtilde: shape mismatch");
  return g1 + g1 * n.asDiagonal() * g1;
}

Combination naive_combination(const Matrix& gt_alpha, const Matrix& gt_beta, const Matrix& h0) {
  const Matrix inner = gt_alpha + gt_beta - gt_alpha * h0 * gt_beta;
  const Eigen::PartialPivLU<Matrix> lu(inner);
  Combination c;
  c.rcond = lu.rcond();
  if (c.rcond < kMinRcond) throw NearResonanceError("combination: inner matrix is near-singular", c.rcond);
  c.g = gt_beta * lu.solve(gt_alpha);
  return c;
}

Matrix combined_correction(const Matrix& g_prime, const Vector& n_total, const Vector& n_alpha,
                           const Vector& n_beta, const Mask& alpha, const Mask& beta) {
  const auto n = g_prime.rows();
  if (n_total.size() != n || n_alpha.size() != n || n_beta.size() != n || alpha.size() != n || beta.size() != n) {
    throw InvalidInput("combined_correction: mask mismatch");
  }
  if ((alpha && beta).any()) throw InvalidInput("combined_correction: object masks overlap");
  const Vector d = masked(n_total - n_alpha, alpha) + masked(n_total - n_beta, beta);
  return g_prime + g_prime * d.asDiagonal() * g_prime;
}

double rytov_residual(const Matrix& gt, const Matrix& v, const Vector& n, const Matrix& h0) {
  const Matrix im_gt = im(gt);
  const Matrix middle = im(v) + Matrix(n.imag().cast<cd>().asDiagonal()) - im(h0);
  return (im_gt - gt * middle * gt.conjugate()).norm() / im_gt.norm();
}

NoiseCovariance noise_covariance(const Matrix& g1, const Vector& n, double b) {
  if (!(b > 0.0)) throw InvalidInput("noise strength b must be > 0");
  NoiseCovariance out;
  Matrix c = b * (im(g1) + g1 * n.imag().cast<cd>().asDiagonal() * g1.adjoint());
  out.c = 0.5 * (c + c.adjoint());

  const Eigen::SelfAdjointEigenSolver<Matrix> es(out.c);
  const RealVector& lambda = es.eigenvalues();
  const double clipped = (-lambda.array()).max(0.0).sum();
  out.clipped_fraction = clipped / lambda.array().abs().sum();
  out.strained = out.clipped_fraction > 0.01;
  out.factor = es.eigenvectors() * lambda.array().max(0.0).sqrt().matrix().cast<cd>().asDiagonal();
  return out;
}

MonteCarloResult monte_carlo_fdt(const Matrix& g1, const Vector& n, double b, std::size_t samples,
                                 std::uint64_t seed, int threads) {
  if (samples == 0) throw InvalidInput("Monte-Carlo needs at least one sample");
  const auto dim = g1.rows();
  const NoiseCovariance cov = noise_covariance(g1, n, b);
  const Matrix transfer = (Matrix::Identity(dim, dim) + g1 * n.asDiagonal()) * cov.factor;

  std::vector<Matrix> partial(kStreams, Matrix::Zero(dim, dim));
  auto run_stream = [&](int stream) {
    const std::size_t count = samples / kStreams + (static_cast<std::size_t>(stream) < samples % kStreams ? 1 : 0);
    if (count == 0) return;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Matrix z(dim, static_cast<Eigen::Index>(count));
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
      for (Eigen::Index i = 0; i < dim; ++i) z(i, j) = cd{normal(rng), normal(rng)};
    }
    const Matrix e = transfer * z;
    partial[stream] = e * e.adjoint();
  };

  const int workers = std::clamp(threads, 1, kStreams);
  if (workers == 1) {
    for (int s = 0; s < kStreams; ++s) run_stream(s);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int s = w; s < kStreams; s += workers) run_stream(s);
      });
    }
    for (auto& t : pool) t.join();
  }

  Matrix estimate = Matrix::Zero(dim, dim);
  for (const auto& p : partial) estimate += p;
  estimate /= static_cast<double>(samples);

  const Matrix target = b * im(gtilde(g1, n));
  MonteCarloResult r;
  r.samples = samples;
  r.max_deviation = (estimate - target).cwiseAbs().maxCoeff() / target.cwiseAbs().maxCoeff();
  r.frobenius_deviation = (estimate - target).norm();
  r.clt_frobenius = cov.c.trace().real() / std::sqrt(static_cast<double>(samples));
  r.clipped_fraction = cov.clipped_fraction;
  return r;
}

void LabConfig::validate() const {
  if (n_points < 8 || n_points > 256) throw InvalidInput("lab_points must lie in [8, 256]");
  if (!(spacing > 0.0)) throw InvalidInput("lab_spacing must be > 0");
  if (!(omega > 0.0)) throw InvalidInput("lab_omega must be > 0");
  if (!(eta_rel > 0.0)) throw InvalidInput("lab_eta_rel must be > 0");
  if (!(eps_alpha >= 1.0) || !(eps_beta >= 1.0)) throw InvalidInput("object permittivities must be >= 1");
  if (!(chi_strength > 0.0) || chi_strength > 0.1) throw InvalidInput("lab_chi_strength must lie in (0, 0.1]");
  if (!(b > 0.0)) throw InvalidInput("noise strength b must be > 0");
  if (samples < 1000) throw InvalidInput("lab_samples must be >= 1000");
  if (threads < 1) throw InvalidInput("threads must be >= 1");
}

Scenario make_scenario(const LabConfig& config, double chi_strength) {
  config.validate();
  const int n = config.n_points;
  const double k0 = config.omega / constants::c;
  Scenario s;
  s.grid = {n, config.spacing, config.eta_rel * k0 * k0};
  s.omega = config.omega;
  s.weights = {{config.omega, 1.0}, {0.8 * config.omega, 0.5}};

  s.alpha = Mask::Constant(n, false);
  s.beta = Mask::Constant(n, false);
  s.alpha.segment(n / 8, 3 * n / 8 - n / 8).setConstant(true);
  s.beta.segment(5 * n / 8, 7 * n / 8 - 5 * n / 8).setConstant(true);

  const RealVector ones = RealVector::Ones(n);
  s.eps_alpha = s.alpha.select(config.eps_alpha * ones, ones);
  s.eps_beta = s.beta.select(config.eps_beta * ones, ones);
  s.eps_union = s.eps_alpha + s.eps_beta - ones;

  double fluct = 0.0;
  for (const auto& [w_omega, w] : s.weights) fluct += w * max_im_diag(build_linear(s.grid, ones, w_omega).g0);
  const cd chi = chi_strength * cd{1.0, 0.5} / (3.0 * fluct);
  const Vector zero = Vector::Zero(n);
  s.chi_alpha = s.alpha.select(Vector::Constant(n, chi), zero);
  s.chi_beta = s.beta.select(Vector::Constant(n, chi), zero);
  s.chi_union = s.chi_alpha + s.chi_beta;
  return s;
}

LabSystem solve_system(const Scenario& s, const RealVector& eps, const Vector& chi, double omega) {
  LabSystem sys;
  sys.ops = build_linear(s.grid, eps, omega);
  sys.n = build_n_operator(s.grid, eps, chi, omega, s.weights);
  sys.gt = gtilde(sys.ops.g1, sys.n);
  return sys;
}

CombinationResiduals combination_residuals(const Scenario& s) {
  const LabSystem a = solve_system(s, s.eps_alpha, s.chi_alpha, s.omega);
  const LabSystem b = solve_system(s, s.eps_beta, s.chi_beta, s.omega);
  const LabSystem u = solve_system(s, s.eps_union, s.chi_union, s.omega);
  const Matrix& h0 = u.ops.h0;

  const Combination ab = naive_combination(a.gt, b.gt, h0);
  const Combination ba = naive_combination(b.gt, a.gt, h0);
  const Matrix combined = combined_correction(ab.g, u.n, a.n, b.n, s.alpha, s.beta);

  CombinationResiduals r;
  r.combined = rel_norm(combined - u.gt, u.gt);
  r.rytov = rytov_residual(u.gt, u.ops.v, u.n, h0);
  r.oracle = rel_norm(ab.g - u.ops.g1, u.ops.g1);
  r.swap = rel_norm(ab.g - ba.g, ab.g);
  r.nonadditive = rel_norm(combined - ab.g, ab.g);
  r.rcond = std::min({ab.rcond, ba.rcond, a.ops.rcond, b.ops.rcond, u.ops.rcond});
  for (const Matrix* m : {&u.ops.g0, &a.ops.g1, &b.ops.g1, &u.ops.g1, &a.gt, &b.gt, &u.gt, &ab.g, &combined}) {
    r.reciprocity = std::max(r.reciprocity, asymmetry(*m));
  }
  const auto dim = h0.rows();
  for (const LabSystem* sys : {&a, &b, &u}) {
    const Matrix res = (sys->ops.h0 - sys->ops.v) * sys->ops.g1 - Matrix::Identity(dim, dim);
    r.ls = std::max(r.ls, res.cwiseAbs().maxCoeff());
  }
  return r;
}

std::vector<CheckResult> run_verification(const LabConfig& config) {
  std::vector<CheckResult> out;
  auto at_most = [&out](std::string name, double v, double thr) {
    out.push_back({std::move(name), v, "<=", thr, v <= thr});
  };
  auto at_least = [&out](std::string name, double v, double thr) {
    out.push_back({std::move(name), v, ">=", thr, v >= thr});
  };
  const double s = config.chi_strength;

  // Exact identities of the linear system.
  const Scenario s0 = make_scenario(config, 0.0);
  const CombinationResiduals r0 = combination_residuals(s0);
  at_most("lippmann_schwinger_chi0", r0.ls, 1e-10);
  at_most("combination_oracle_chi0", r0.oracle, 1e-10);
  at_most("combination_swap_chi0", r0.swap, 1e-10);
  at_most("rytov_residual_chi0", r0.rytov, 1e-10);

  // First-order identities: residuals must scale as chi^2.
  const CombinationResiduals r1 = combination_residuals(make_scenario(config, s));
  const CombinationResiduals r2 = combination_residuals(make_scenario(config, 0.5 * s));
  at_most("combined_correction_chi2_slope_error", std::abs(std::log2(r1.combined / r2.combined) - 2.0), 0.1);
  at_most("rytov_chi2_slope_error", std::abs(std::log2(r1.rytov / r2.rytov) - 2.0), 0.1);
  at_least("nonadditive_correction", r1.nonadditive, 10.0 * std::numeric_limits<double>::epsilon());
  at_most("combination_swap_chi", r1.swap, 1e-10);
  at_most("reciprocity", std::max({r0.reciprocity, r1.reciprocity, r2.reciprocity}), 1e-12);

  // Conjugation under omega -> -omega.
  const Scenario s1 = make_scenario(config, s);
  const LabSystem plus = solve_system(s1, s1.eps_union, s1.chi_union, s1.omega);
  const LabSystem minus = solve_system(s1, s1.eps_union, s1.chi_union, -s1.omega);
  at_most("conjugation",
          std::max(rel_norm(minus.ops.g1 - plus.ops.g1.conjugate(), plus.ops.g1),
                   rel_norm(minus.gt - plus.gt.conjugate(), plus.gt)),
          1e-12);

  // Noise correlator.
  const LabSystem lin = solve_system(s0, s0.eps_union, Vector::Zero(s0.grid.n_points), s0.omega);
  const NoiseCovariance c0 = noise_covariance(lin.ops.g1, lin.n, config.b);
  const Eigen::SelfAdjointEigenSolver<Matrix> es(c0.c, Eigen::EigenvaluesOnly);
  at_least("noise_psd_chi0", es.eigenvalues().minCoeff() / es.eigenvalues().maxCoeff(), -1e-12);
  at_most("noise_clipped_fraction", noise_covariance(plus.ops.g1, plus.n, config.b).clipped_fraction, 0.01);

  // Monte-Carlo FDT at M/16, M/4, M.
  const std::size_t m = config.samples;
  std::vector<MonteCarloResult> mc;
  for (const std::size_t mk : {m / 16, m / 4, m}) {
    mc.push_back(monte_carlo_fdt(plus.ops.g1, plus.n, config.b, mk, config.seed, config.threads));
  }
  double worst_ratio = 1.0;
  for (const auto& r : mc) {
    const double ratio = r.frobenius_deviation / r.clt_frobenius;
    worst_ratio = std::max(worst_ratio, std::max(ratio, 1.0 / ratio));
  }
  at_most("mc_clt_ratio_factor", worst_ratio, 2.0);
  double worst_decay = 1.0;
  for (std::size_t i = 0; i + 1 < mc.size(); ++i) {
    const double decay = mc[i].frobenius_deviation / mc[i + 1].frobenius_deviation / 2.0;
    worst_decay = std::max(worst_decay, std::max(decay, 1.0 / decay));
  }
  at_most("mc_sqrt_m_decay_factor", worst_decay, 2.0);
  const MonteCarloResult mc_lin = monte_carlo_fdt(lin.ops.g1, lin.n, config.b, m, config.seed, config.threads);
  at_most("mc_max_deviation_chi0_sqrtM", mc_lin.max_deviation * std::sqrt(static_cast<double>(m)), 5.0);
  const MonteCarloResult again = monte_carlo_fdt(plus.ops.g1, plus.n, config.b, m / 16, config.seed,
                                                 config.threads == 1 ? 3 : 1);
  at_most("mc_seed_reproducible", again.frobenius_deviation == mc[0].frobenius_deviation ? 0.0 : 1.0, 0.0);
  return out;
}

}  // namespace nlcasimir::lab
