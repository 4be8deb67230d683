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

// Dense 1-D scalar Helmholtz bench for the first-order operator identities:
// amended response, noise correlator, Rytov decomposition and the
// combination of two objects.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nlcasimir::lab {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Mask = Eigen::Array<bool, Eigen::Dynamic, 1>;

/// An inner matrix of the combination rule (or H itself) is numerically singular.
class NearResonanceError : public std::runtime_error {
 public:
  NearResonanceError(const std::string& what, double rcond) : std::runtime_error(what), rcond_(rcond) {}
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

struct Grid1D {
  int n_points = 32;
  double spacing = 1e-8;  // [m]
  double eta = 0.0;       // absorber [1/m^2], > 0

  void validate() const;
};

/// Elementwise imaginary part (A - conj(A)) / 2i.
Matrix im(const Matrix& a);

struct LinearOperators {
  Matrix h0;  // G0^{-1} = -D2 - k0^2 - i sgn(omega) eta
  Matrix g0;
  Matrix g1;
  Matrix v;   // diag(k0^2 (eps - 1))
  double rcond = 0.0;
};

/// -D2 - (omega/c)^2 eps - i sgn(omega) eta with Dirichlet ends, and its inverse.
LinearOperators build_linear(const Grid1D& grid, const RealVector& eps, double omega);

struct FrequencyWeight {
  double omega;   // [rad/s]
  double weight;  // > 0
};

/// Diagonal of N: 3 k0^2 chi(z) sum_w w Im G1(z, z; omega'). chi may be complex;
/// at negative omega it is conjugated.
Vector build_n_operator(const Grid1D& grid, const RealVector& eps, const Vector& chi, double omega,
                        const std::vector<FrequencyWeight>& weights);

/// (I + G1 N) G1.
Matrix gtilde(const Matrix& g1, const Vector& n);

struct Combination {
  Matrix g;
  double rcond = 0.0;
};

/// Gt_beta (Gt_alpha + Gt_beta - Gt_alpha G0^{-1} Gt_beta)^{-1} Gt_alpha.
Combination naive_combination(const Matrix& gt_alpha, const Matrix& gt_beta, const Matrix& h0);

/// G' + G' [sum_i P_i (N_total - N_i) P_i] G' with P_i the mask of object i.
Matrix combined_correction(const Matrix& g_prime, const Vector& n_total, const Vector& n_alpha,
                           const Vector& n_beta, const Mask& alpha, const Mask& beta);

/// ||Im Gt - Gt Im[V + N - G0^{-1}] Gt*|| / ||Im Gt|| (Frobenius).
double rytov_residual(const Matrix& gt, const Matrix& v, const Vector& n, const Matrix& h0);

struct NoiseCovariance {
  Matrix c;                       // b [Im G1 + G1 Im(N) G1*], Hermitian
  Matrix factor;                  // L with L L* equal to the PSD projection of c
  double clipped_fraction = 0.0;  // clipped negative eigenvalue mass / trace
  bool strained = false;          // clipped_fraction > 1%
};

NoiseCovariance noise_covariance(const Matrix& g1, const Vector& n, double b);

struct MonteCarloResult {
  std::size_t samples = 0;
  double max_deviation = 0.0;        // max |<E E*> - b Im Gt| / (b max|Im Gt|)
  double frobenius_deviation = 0.0;  // ||<E E*> - b Im Gt||_F
  double clt_frobenius = 0.0;        // Tr(C) / sqrt(M)
  double clipped_fraction = 0.0;
};

/// Samples E = (I + G1 N) psi with psi ~ CN(0, C) and compares <E E*> with b Im Gt.
/// Samples are split into fixed streams seeded by (seed, stream); the result is
/// independent of the thread count.
MonteCarloResult monte_carlo_fdt(const Matrix& g1, const Vector& n, double b, std::size_t samples,
                                 std::uint64_t seed, int threads = 1);

/// Parameters of the two-object verification scenario.
struct LabConfig {
  int n_points = 32;
  double spacing = 1e-8;
  double omega = 7.5e15;
  double eta_rel = 1e-3;  // eta = eta_rel (omega/c)^2
  double eps_alpha = 2.0;
  double eps_beta = 3.0;
  double chi_strength = 2.5e-3;  // max |N| / k0^2
  double b = 1.0;
  std::size_t samples = 16000;
  std::uint64_t seed = 20260416;
  int threads = 1;

  void validate() const;
};

/// Two objects on disjoint index ranges [n/8, 3n/8) and [5n/8, 7n/8).
struct Scenario {
  Grid1D grid;
  double omega = 0.0;
  Mask alpha, beta;
  RealVector eps_alpha, eps_beta, eps_union;
  Vector chi_alpha, chi_beta, chi_union;
  std::vector<FrequencyWeight> weights;
};

/// chi_strength s sets chi = s (1 + i/2) / (3 sum_w w max Im G0(z, z; omega')).
Scenario make_scenario(const LabConfig& config, double chi_strength);

/// Operators of one system (single object or union) at the scenario frequency.
struct LabSystem {
  LinearOperators ops;
  Vector n;
  Matrix gt;
};

LabSystem solve_system(const Scenario& s, const RealVector& eps, const Vector& chi, double omega);

struct CombinationResiduals {
  double combined = 0.0;      // ||Gt_combined - gtilde(G1_union, N_total)|| / ||.||
  double rytov = 0.0;         // rytov_residual of the union system
  double oracle = 0.0;        // ||G' - G1_union|| / ||G1_union|| (meaningful at chi = 0)
  double swap = 0.0;          // ||G'(a, b) - G'(b, a)|| / ||G'||
  double nonadditive = 0.0;   // ||Gt_combined - G'|| / ||G'||
  double reciprocity = 0.0;   // max ||A - A^T|| / ||A|| over all response matrices
  double ls = 0.0;            // max ||(G0^{-1} - V) G1 - I||_max over the three systems
  double rcond = 0.0;
};

CombinationResiduals combination_residuals(const Scenario& s);

struct CheckResult {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<=" or ">="
  double threshold = 0.0;
  bool pass = false;
};

/// Runs the full identity suite; one row per check.
std::vector<CheckResult> run_verification(const LabConfig& config);

}  // namespace nlcasimir::lab
