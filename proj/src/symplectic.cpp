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

#include "gaussmeter/symplectic.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace gaussmeter {

namespace {

SymplecticForm form_for(const Eigen::MatrixXd& alpha) {
  if (alpha.rows() != alpha.cols() || alpha.rows() == 0 || alpha.rows() % 2 != 0) {
    std::ostringstream msg;
    msg << "covariance must be 2s x 2s, got " << alpha.rows() << " x " << alpha.cols();
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  return SymplecticForm(alpha.rows() / 2);
}

}  // namespace

CovarianceCheck validate_covariance(const Eigen::MatrixXd& alpha, const SymplecticForm& form) {
  require_symmetric(alpha);
  if (alpha.rows() != 2 * form.modes()) {
    throw Error(ErrorKind::DimensionMismatch, "covariance size does not match symplectic form");
  }
  const std::complex<double> half_i(0.0, 0.5);
  const Eigen::MatrixXcd m = hermitian_part(alpha).cast<std::complex<double>>() + half_i * form.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  CovarianceCheck out;
  out.margin = es.eigenvalues().minCoeff();
  out.admissible = out.margin >= -kAdmissibilityTolerance;
  return out;
}

RealCovariance::RealCovariance(const Eigen::MatrixXd& alpha) : form_(form_for(alpha)) {
  const CovarianceCheck check = validate_covariance(alpha, form_);
  if (!check.admissible) {
    std::ostringstream msg;
    msg << "alpha + i Delta / 2 has eigenvalue " << check.margin;
    throw Error(ErrorKind::InvalidCovariance, msg.str());
  }
  alpha_ = hermitian_part(alpha);
}

double gaussian_entropy(const RealCovariance& alpha, LogBase base) {
  double total = 0.0;
  for (double nu : alpha.symplectic_eigenvalues()) {
    double excess = nu - 0.5;
    if (excess < 0.0 && excess >= -kAdmissibilityTolerance) excess = 0.0;
    if (std::abs(excess) <= 64.0 * std::numeric_limits<double>::epsilon() * nu) excess = 0.0;
    total += g_scalar(excess, base);
  }
  return total;
}

RealCovariance posterior_covariance(const RealCovariance& alpha, const RealCovariance& beta) {
  if (alpha.modes() != beta.modes()) {
    throw Error(ErrorKind::DimensionMismatch, "alpha and beta have different mode counts");
  }
  const Eigen::MatrixXd& b = beta.matrix();

  const Eigen::MatrixXd sum = alpha.matrix() + b;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sum_es(sum, Eigen::EigenvaluesOnly);
  const double sum_min = sum_es.eigenvalues().minCoeff();
  const double sum_max = sum_es.eigenvalues().maxCoeff();
  if (sum_min <= 0.0 || sum_max / sum_min > 1e12) {
    throw Error(ErrorKind::SingularSum, "alpha + beta is numerically singular");
  }

  // 2 beta Delta^{-1} = beta^{1/2} (2A) beta^{-1/2} with A = beta^{1/2} Delta^{-1} beta^{1/2}
  // antisymmetric, so I + (2 beta Delta^{-1})^{-2} = beta^{1/2} (I - (4 A^T A)^{-1}) beta^{-1/2}.
  // The middle factor is symmetric with eigenvalues 1 - 1/(2 nu)^2 >= 0, and the
  // primary square root inherits the same similarity.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bes(b);
  if (bes.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorKind::InvalidCovariance, "beta must be positive definite");
  }
  const Eigen::MatrixXd& v = bes.eigenvectors();
  const Eigen::VectorXd root_ev = bes.eigenvalues().cwiseSqrt();
  const Eigen::MatrixXd b_half = v * root_ev.asDiagonal() * v.transpose();
  const Eigen::MatrixXd b_half_inv = v * root_ev.cwiseInverse().asDiagonal() * v.transpose();

  const Eigen::MatrixXd a = b_half * beta.form().inverse() * b_half;
  const Eigen::MatrixXd ata = hermitian_part(Eigen::MatrixXd(a.transpose() * a));
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                      std::max(1.0, ata.cwiseAbs().rowwise().sum().maxCoeff());
  const Eigen::MatrixXd middle_root = spectral_apply(ata, [floor](double mu) {
    const double val = 1.0 - 1.0 / (4.0 * mu);
    if (val < -1e-10) {
      throw Error(ErrorKind::InvalidCovariance, "beta has a symplectic eigenvalue below 1/2");
    }
    if (val <= floor) return 0.0;
    return std::sqrt(val);
  });
  const Eigen::MatrixXd left = b_half * middle_root * b_half_inv;
  const Eigen::MatrixXd right = b_half_inv * middle_root * b_half;

  const Eigen::MatrixXd tilde = b - left * b * sum.llt().solve(b) * right;
  const double dev = (tilde - tilde.transpose()).cwiseAbs().maxCoeff();
  if (dev > 1e-8 * std::max(1.0, tilde.cwiseAbs().maxCoeff())) {
    std::ostringstream msg;
    msg << "posterior covariance asymmetry " << dev;
    throw Error(ErrorKind::NotSymmetric, msg.str());
  }
  return RealCovariance(hermitian_part(tilde));
}

double entropy_reduction_general(const RealCovariance& alpha, const GeneralMeasurement& meas, LogBase base) {
  const RealCovariance tilde = posterior_covariance(alpha, meas.noise());
  return gaussian_entropy(alpha, base) - gaussian_entropy(tilde, base);
}

Eigen::MatrixXd real_representation(const Eigen::MatrixXcd& h) {
  const Index s = h.rows();
  Eigen::MatrixXd out(2 * s, 2 * s);
  for (Index j = 0; j < s; ++j) {
    for (Index k = 0; k < s; ++k) {
      const double re = h(j, k).real();
      const double im = h(j, k).imag();
      out(2 * j, 2 * k) = re;
      out(2 * j, 2 * k + 1) = -im;
      out(2 * j + 1, 2 * k) = im;
      out(2 * j + 1, 2 * k + 1) = re;
    }
  }
  return out;
}

EmbeddedGauge embed_gauge_invariant(const GaugeState& state, const GaugeMeasurement& meas) {
  if (state.modes() != meas.modes()) {
    throw Error(ErrorKind::DimensionMismatch, "state and measurement mode counts differ");
  }
  const Index s = state.modes();
  const Eigen::MatrixXcd half = 0.5 * Eigen::MatrixXcd::Identity(s, s);
  return EmbeddedGauge{RealCovariance(real_representation(state.correlation().matrix() + half)),
                       GeneralMeasurement(RealCovariance(real_representation(meas.noise().matrix() + half)))};
}

}  // namespace gaussmeter
