// Copyright 2026 The gaussmeter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Brute-force reference engine on a truncated Fock basis. Every quantity here
// is computed from operators, never from the closed-form Gaussian formulas, so
// it can be used to check them.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "gaussmeter/matfun.hpp"

namespace gaussmeter::fock {

using Complex = std::complex<double>;

/// Dense operator on `modes` modes with `cutoff` levels each; |n1, n2> sits
/// at index n1 * cutoff + n2.
class FockOperator {
 public:
  FockOperator(Eigen::MatrixXcd matrix, int cutoff, int modes = 1);

  int cutoff() const { return cutoff_; }
  int modes() const { return modes_; }
  Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }

 private:
  Eigen::MatrixXcd matrix_;
  int cutoff_;
  int modes_;
};

/// Hermitian, |Tr - 1| <= 1e-6, eigenvalues >= -1e-10.
void require_density(const FockOperator& rho);

/// Truncated annihilation operator a|n> = sqrt(n)|n-1>.
Eigen::MatrixXcd annihilation(int cutoff);
/// a_j on a product of `modes` truncated modes.
Eigen::MatrixXcd annihilation(int cutoff, int modes, int mode);

/// Smallest cutoff with thermal tail mass (N/(N+1))^d <= tail.
int thermal_cutoff(double mean, double tail = 1e-8);

/// Diagonal p_n = N^n / (N+1)^{n+1}; TruncationTooSmall when the tail mass
/// beyond d exceeds 1e-8.
FockOperator thermal_state(double mean, int d);

FockOperator coherent_state(Complex z, int d);
FockOperator pure_state(const Eigen::VectorXcd& psi, int cutoff, int modes = 1);
/// rho_1 (x) rho_2; both single-mode with the same cutoff.
FockOperator tensor_product(const FockOperator& first, const FockOperator& second);

struct Displacement {
  Eigen::MatrixXcd matrix;
  double unitarity_deviation = 0.0;  // on the lowest ceil(d/4) levels
  bool large_amplitude = false;      // |z|^2 > d/4
};

/// exp(z a^dagger - conj(z) a) from the truncated generator, exponentiated in
/// a padded working space and cropped to d levels. TruncationTooSmall when the
/// cropped block is not unitary to 1e-6 on the retained levels.
Displacement displacement(Complex z, int d);

/// Exact <m|D(z)|n> for m < rows, n < cols from the associated Laguerre form,
/// independent of any truncation.
Eigen::MatrixXcd displacement_elements(Complex z, int rows, int cols);

/// Number of levels kept for outputs of sqrt(rho_N): tail (N/(N+1))^d <= 1e-12.
int noise_cutoff(double noise);

/// m(z) = D(z) rho_N D(z)^dagger on d levels.
FockOperator povm_density(double noise, Complex z, int d);

/// p_rho(z) = Tr rho m(z) against d^2z / pi.
double output_probability(const FockOperator& rho, double noise, Complex z);

struct Posterior {
  FockOperator state;  // unit trace, on noise_cutoff(N) levels
  double density = 0.0;
};

/// rho_hat(z) = sqrt(rho_N) D(z)^dagger rho D(z) sqrt(rho_N) / p. Throws
/// NegligibleOutcome when p <= 1e-14.
Posterior posterior_state(const FockOperator& rho, double noise, Complex z);

/// Spectrum of sqrt(rho) m(z) sqrt(rho) / p, which equals the nonzero
/// spectrum of the posterior for any factorization of m(z).
Eigen::VectorXd posterior_spectrum_via_effect(const FockOperator& rho, double noise, Complex z);

/// Cartesian trapezoid nodes on [-R, R]^2 with weights for d^2z / pi.
struct OutcomeGrid {
  std::vector<Complex> points;
  std::vector<double> weights;
  std::vector<double> coarse_weights;  // same nodes, step doubled (zero off the coarse lattice)
  double radius = 0.0;
  double step = 0.0;
};

OutcomeGrid trapezoid_grid(double radius, double step);
/// R = 5 sigma, step 0.15 sigma with sigma = sqrt(Lambda + N + 1).
OutcomeGrid default_grid(double lambda, double noise);

struct ErEstimate {
  double value = 0.0;
  double error = 0.0;  // fine/coarse grid difference, or Monte Carlo standard error
  double mass = 0.0;   // integrated output probability
};

/// H(rho) - sum_k w_k p(z_k) H(rho_hat(z_k)). GridMassDeficit if the
/// integrated mass misses 1 by more than mass_tolerance.
ErEstimate er_numeric(const FockOperator& rho, double noise, const OutcomeGrid& grid, LogBase base = LogBase::Bits,
                      double mass_tolerance = 1e-3);

/// Two-mode entropy reduction by importance sampling from the Gaussian with the
/// state's output covariance. The noise must be diagonal.
ErEstimate er_numeric_mc(const FockOperator& rho, const HermitianMatrix& noise, std::size_t samples,
                         std::uint64_t seed, LogBase base = LogBase::Bits, double mass_tolerance = 5e-2);

/// Runs er_numeric on thermal inputs at cutoffs d and 2d; TruncationTooSmall if
/// they differ by 1e-3 or more.
ErEstimate er_numeric_thermal(double lambda, double noise, int d, LogBase base = LogBase::Bits);

struct NormalMoments {
  Complex first;      // <a>
  double lambda;      // Tr a rho a^dagger
  Complex anomalous;  // <a^2>
};

NormalMoments normal_moments(const FockOperator& rho);
/// [Tr a_j rho a_k^dagger]
HermitianMatrix normal_moment_matrix(const FockOperator& rho);

/// Phase average over exp(-i phi N_total): keeps elements between equal total
/// photon numbers.
FockOperator gauge_average(const FockOperator& rho);

double von_neumann_entropy(const Eigen::MatrixXcd& rho, LogBase base = LogBase::Bits);
double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// D(w) rho_N D(w)^dagger on `rows` levels from exact matrix elements.
Eigen::MatrixXcd displaced_thermal(double mean, Complex shift, int rows);

}  // namespace gaussmeter::fock
