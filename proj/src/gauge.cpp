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

#include "gaussmeter/gauge.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gaussmeter {

namespace {

void require_psd(const HermitianMatrix& m, const char* what) {
  if (!m.is_psd()) {
    std::ostringstream msg;
    msg << what << " must be positive semidefinite (min eigenvalue " << m.min_eigenvalue() << ")";
    throw Error(ErrorKind::NegativeEigenvalue, msg.str());
  }
}

void require_same_modes(const GaugeState& state, const GaugeMeasurement& meas) {
  if (state.modes() != meas.modes()) {
    std::ostringstream msg;
    msg << "state has " << state.modes() << " modes, measurement has " << meas.modes();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
}

// sqrt(N (N+I)) and sqrt(N (N+I)^{-1}) as spectral functions of N; both vanish
// on the kernel of N, so no inverse of N is ever formed.
double roundoff_floor(const HermitianMatrix& n) {
  return 64.0 * std::numeric_limits<double>::epsilon() *
         std::max(1.0, n.matrix().cwiseAbs().rowwise().sum().maxCoeff());
}

Eigen::MatrixXcd noise_gain(const HermitianMatrix& n) {
  const double floor = roundoff_floor(n);
  return spectral_apply(n.matrix(), [floor](double v) {
    if (v <= floor) return 0.0;
    return std::sqrt(v * (v + 1.0));
  });
}

Eigen::MatrixXcd noise_ratio(const HermitianMatrix& n) {
  const double floor = roundoff_floor(n);
  return spectral_apply(n.matrix(), [floor](double v) {
    if (v <= floor) return 0.0;
    return std::sqrt(v / (v + 1.0));
  });
}

}  // namespace

GaugeState::GaugeState(HermitianMatrix lambda) : lambda_(std::move(lambda)) {
  require_psd(lambda_, "correlation matrix Lambda");
}

GaugeMeasurement::GaugeMeasurement(HermitianMatrix noise) : noise_(std::move(noise)) {
  require_psd(noise_, "noise matrix N");
}

HermitianMatrix output_density_params(const GaugeState& state, const GaugeMeasurement& meas) {
  require_same_modes(state, meas);
  const Index s = state.modes();
  return HermitianMatrix(state.correlation().matrix() + meas.noise().matrix() + Eigen::MatrixXcd::Identity(s, s));
}

double output_density(const HermitianMatrix& sigma, const Eigen::VectorXcd& z) {
  if (z.size() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "outcome size does not match covariance");
  Eigen::LLT<Eigen::MatrixXcd> llt(sigma.matrix());
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::NotPositiveDefinite, "output covariance");
  const double quad = z.dot(llt.solve(z)).real();
  double det = 1.0;
  for (Index i = 0; i < sigma.dim(); ++i) det *= std::norm(llt.matrixL()(i, i));
  return std::exp(-quad) / det;
}

GaugePosterior posterior_params(const GaugeState& state, const GaugeMeasurement& meas) {
  require_same_modes(state, meas);
  const HermitianMatrix sigma = output_density_params(state, meas);
  const Eigen::MatrixXcd sigma_inv = sigma.matrix().inverse();
  const Eigen::MatrixXcd gain = noise_gain(meas.noise());

  GaugePosterior out;
  out.K = gain * sigma_inv;
  const Eigen::MatrixXcd ntilde = noise_ratio(meas.noise()) * state.correlation().matrix() * sigma_inv * gain;
  // Exactly Hermitian in exact arithmetic; check before symmetrizing.
  require_hermitian(ntilde, 1e-9);
  out.Ntilde = HermitianMatrix(hermitian_part(ntilde));
  return out;
}

double entropy_reduction_gauge(const GaugeState& state, const GaugeMeasurement& meas, LogBase base) {
  const GaugePosterior post = posterior_params(state, meas);
  return trace_g(state.correlation().matrix(), base) - trace_g(post.Ntilde.matrix(), base);
}

SqrtGaussianParams sqrt_gaussian_params(const GaugeMeasurement& meas) {
  const Index s = meas.modes();
  SqrtGaussianParams out;
  out.L = HermitianMatrix(meas.noise().matrix() + noise_gain(meas.noise()));
  // det(sqrt(N) + sqrt(N+I))^2 = det(2L + I)
  const Eigen::MatrixXcd r = 2.0 * out.L.matrix() + Eigen::MatrixXcd::Identity(s, s);
  out.c2 = s == 0 ? 1.0 : r.determinant().real();
  return out;
}

DualChannelParams dual_channel_params(const Eigen::MatrixXcd& K, const HermitianMatrix& L) {
  const Index s = L.dim();
  if (K.rows() != s || K.cols() != s) throw Error(ErrorKind::DimensionMismatch, "K and L sizes differ");
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(s, s);
  const Eigen::MatrixXcd r = 2.0 * L.matrix() + I;
  const Eigen::MatrixXcd plus = I + K;
  const Eigen::MatrixXcd minus = I - K;
  const Eigen::MatrixXcd b = 0.25 * (plus * r.inverse() * plus.adjoint() + minus * r * minus.adjoint());
  return DualChannelParams{K.adjoint(), HermitianMatrix(b)};
}

DualChannelParams dual_channel_params(const GaugeState& state, const GaugeMeasurement& meas) {
  const GaugePosterior post = posterior_params(state, meas);
  return dual_channel_params(post.K, sqrt_gaussian_params(meas).L);
}

CpCertificate cp_certificate(const DualChannelParams& params) {
  const Index s = params.B.dim();
  const Eigen::MatrixXcd k = params.Kstar.adjoint();
  const Eigen::MatrixXcd half = 0.5 * (Eigen::MatrixXcd::Identity(s, s) - k * k.adjoint());
  CpCertificate out;
  out.margin_minus = HermitianMatrix(hermitian_part(Eigen::MatrixXcd(params.B.matrix() - half))).min_eigenvalue();
  out.margin_plus = HermitianMatrix(hermitian_part(Eigen::MatrixXcd(params.B.matrix() + half))).min_eigenvalue();
  out.margin = std::min(out.margin_minus, out.margin_plus);
  out.passed = out.margin >= -1e-9;
  return out;
}

GaugeState gauge_average_correlation(const Eigen::VectorXcd& first_moments, const HermitianMatrix& lambda,
                                     const Eigen::MatrixXcd& anomalous) {
  const Index s = lambda.dim();
  if (first_moments.size() != s || anomalous.rows() != s || anomalous.cols() != s) {
    throw Error(ErrorKind::DimensionMismatch, "moment arrays must match the mode count");
  }
  return GaugeState(lambda);
}

}  // namespace gaussmeter
