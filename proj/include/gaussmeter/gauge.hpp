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

// Gauge-covariant Gaussian measurement with POVM density D(z) rho_N D(z)^dagger
// against d^{2s}z / pi^s: output law, posterior family, entropy reduction and
// the Gaussian channel induced on the posterior states.

#include <Eigen/Dense>

#include "gaussmeter/matfun.hpp"

namespace gaussmeter {

/// Gauge-invariant Gaussian state, parameterized by its complex correlation
/// matrix Lambda = [Tr a_j rho a_k^dagger] >= 0.
class GaugeState {
 public:
  explicit GaugeState(HermitianMatrix lambda);
  static GaugeState vacuum(Index s) { return GaugeState(HermitianMatrix::zero(s)); }

  Index modes() const { return lambda_.dim(); }
  const HermitianMatrix& correlation() const { return lambda_; }

 private:
  HermitianMatrix lambda_;
};

/// Measurement noise correlation matrix N >= 0; N = 0 is heterodyne.
class GaugeMeasurement {
 public:
  explicit GaugeMeasurement(HermitianMatrix noise);
  static GaugeMeasurement heterodyne(Index s) { return GaugeMeasurement(HermitianMatrix::zero(s)); }

  Index modes() const { return noise_.dim(); }
  const HermitianMatrix& noise() const { return noise_; }

 private:
  HermitianMatrix noise_;
};

/// Posterior for outcome z is D(Kz)^dagger rho_Ntilde D(Kz).
struct GaugePosterior {
  Eigen::MatrixXcd K;
  HermitianMatrix Ntilde;
};

struct SqrtGaussianParams {
  HermitianMatrix L;  // sqrt(rho_N) = c * rho_L
  double c2 = 1.0;
};

/// Dual action Phi^*(D(w)) = exp(-w^* B w) D(K^* w).
struct DualChannelParams {
  Eigen::MatrixXcd Kstar;
  HermitianMatrix B;
};

struct CpCertificate {
  bool passed = false;
  double margin = 0.0;        // min over both signs
  double margin_minus = 0.0;  // lambda_min(B - (I - K K^*)/2)
  double margin_plus = 0.0;   // lambda_min(B + (I - K K^*)/2)
};

/// Covariance of the output law: Sigma = Lambda + N + I. The density against
/// d^{2s}z / pi^s is exp(-z^* Sigma^{-1} z) / det Sigma.
HermitianMatrix output_density_params(const GaugeState& state, const GaugeMeasurement& meas);

/// Evaluates exp(-z^* Sigma^{-1} z) / det Sigma.
double output_density(const HermitianMatrix& sigma, const Eigen::VectorXcd& z);

GaugePosterior posterior_params(const GaugeState& state, const GaugeMeasurement& meas);

/// Sp g(Lambda) - Sp g(Ntilde): the maximal entropy reduction over all states
/// sharing the normal moments Lambda, attained by the Gaussian state.
double entropy_reduction_gauge(const GaugeState& state, const GaugeMeasurement& meas,
                               LogBase base = LogBase::Bits);

SqrtGaussianParams sqrt_gaussian_params(const GaugeMeasurement& meas);

DualChannelParams dual_channel_params(const GaugeState& state, const GaugeMeasurement& meas);

/// B = [(I+K) R^{-1} (I+K^*) + (I-K) R (I-K^*)] / 4 with R = 2L + I.
DualChannelParams dual_channel_params(const Eigen::MatrixXcd& K, const HermitianMatrix& L);

/// Checks B >= +-(I - K K^*)/2; passes iff the margin is >= -1e-9.
CpCertificate cp_certificate(const DualChannelParams& params);

/// Moment map of phase averaging: first moments m and anomalous moments A are
/// discarded, the normal moments Lambda are kept.
GaugeState gauge_average_correlation(const Eigen::VectorXcd& first_moments, const HermitianMatrix& lambda,
                                     const Eigen::MatrixXcd& anomalous);

}  // namespace gaussmeter
