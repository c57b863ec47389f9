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

// Centered Gaussian states and Gaussian measurements described by real
// covariance matrices on (R^{2s}, Delta), without assuming gauge symmetry.

#include <Eigen/Dense>

#include "gaussmeter/gauge.hpp"
#include "gaussmeter/matfun.hpp"

namespace gaussmeter {

/// Lower bound on lambda_min(alpha + i Delta / 2) for an admissible covariance.
inline constexpr double kAdmissibilityTolerance = 1e-9;

struct CovarianceCheck {
  bool admissible = false;
  double margin = 0.0;  // lambda_min(alpha + i Delta / 2)
};

CovarianceCheck validate_covariance(const Eigen::MatrixXd& alpha, const SymplecticForm& form);

/// Real symmetric 2s x 2s covariance satisfying alpha + i Delta / 2 >= 0.
class RealCovariance {
 public:
  explicit RealCovariance(const Eigen::MatrixXd& alpha);
  static RealCovariance vacuum(Index s) { return RealCovariance(0.5 * Eigen::MatrixXd::Identity(2 * s, 2 * s)); }

  Index modes() const { return form_.modes(); }
  const Eigen::MatrixXd& matrix() const { return alpha_; }
  const SymplecticForm& form() const { return form_; }
  Eigen::VectorXd symplectic_eigenvalues() const { return symplectic_spectrum(alpha_, form_); }

 private:
  Eigen::MatrixXd alpha_;
  SymplecticForm form_;
};

/// POVM W(z) rho_beta W(z)^* d^{2s}z / (2 pi)^s.
class GeneralMeasurement {
 public:
  explicit GeneralMeasurement(RealCovariance beta) : beta_(std::move(beta)) {}

  Index modes() const { return beta_.modes(); }
  const RealCovariance& noise() const { return beta_; }

 private:
  RealCovariance beta_;
};

/// Von Neumann entropy sum_j g(nu_j - 1/2).
double gaussian_entropy(const RealCovariance& alpha, LogBase base = LogBase::Bits);

/// Covariance of the posterior state for the Gaussian input rho_alpha:
/// beta - S beta (alpha + beta)^{-1} beta S^T with S = sqrt(I + (2 beta Delta^{-1})^{-2}).
RealCovariance posterior_covariance(const RealCovariance& alpha, const RealCovariance& beta);

double entropy_reduction_general(const RealCovariance& alpha, const GeneralMeasurement& meas,
                                 LogBase base = LogBase::Bits);

/// Real 2s x 2s form of a complex Hermitian H with x/p interleaving:
/// block (j, k) = [[Re H_jk, -Im H_jk], [Im H_jk, Re H_jk]].
Eigen::MatrixXd real_representation(const Eigen::MatrixXcd& h);

struct EmbeddedGauge {
  RealCovariance alpha;
  GeneralMeasurement measurement;
};

/// alpha = Lambda + I/2, beta = N + I/2 in real form.
EmbeddedGauge embed_gauge_invariant(const GaugeState& state, const GaugeMeasurement& meas);

}  // namespace gaussmeter
