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

#include "gaussmeter/matfun.hpp"

#include <sstream>

namespace gaussmeter {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeArgument: return "NegativeArgument";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::PairingFailure: return "PairingFailure";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidCovariance: return "InvalidCovariance";
    case ErrorKind::SingularSum: return "SingularSum";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::DivisionDegenerate: return "DivisionDegenerate";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::InfeasibleConstraint: return "InfeasibleConstraint";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::NegligibleOutcome: return "NegligibleOutcome";
    case ErrorKind::GridMassDeficit: return "GridMassDeficit";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

double g_scalar(double x, LogBase base) {
  if (!(x >= -kClipTolerance)) {
    std::ostringstream msg;
    msg << "g(x) requires x >= 0, got " << x;
    throw Error(ErrorKind::NegativeArgument, msg.str());
  }
  if (x <= 0.0) return 0.0;
  // For x >= 1 use log(x+1) + x log(1 + 1/x), which avoids cancellation at large x.
  const double nats =
      x < 1.0 ? (x + 1.0) * std::log1p(x) - x * std::log(x) : std::log1p(x) + x * std::log1p(1.0 / x);
  return nats / log_of_base(base);
}

namespace detail {

double clip_eigenvalue(double lambda, double scale) {
  if (lambda >= 0.0) return lambda;
  if (lambda >= -kClipTolerance * scale) return 0.0;
  std::ostringstream msg;
  msg << "eigenvalue " << lambda << " below clip tolerance";
  throw Error(ErrorKind::NegativeEigenvalue, msg.str());
}

void throw_not_hermitian(double deviation, double tolerance) {
  std::ostringstream msg;
  msg << "max|A - A^dagger| = " << deviation << " exceeds " << tolerance;
  throw Error(ErrorKind::NotHermitian, msg.str());
}

}  // namespace detail

HermitianMatrix::HermitianMatrix(const Eigen::MatrixXcd& m) {
  require_hermitian(m);
  m_ = hermitian_part(m);
}

HermitianMatrix HermitianMatrix::zero(Index s) { return HermitianMatrix(Eigen::MatrixXcd::Zero(s, s)); }

HermitianMatrix HermitianMatrix::identity(Index s) {
  return HermitianMatrix(Eigen::MatrixXcd::Identity(s, s));
}

HermitianMatrix HermitianMatrix::diagonal(const Eigen::VectorXd& d) {
  return HermitianMatrix(d.cast<std::complex<double>>().asDiagonal().toDenseMatrix());
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> d) {
  Eigen::VectorXd v(static_cast<Index>(d.size()));
  Index i = 0;
  for (double x : d) v(i++) = x;
  return diagonal(v);
}

Eigen::VectorXd HermitianMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double HermitianMatrix::min_eigenvalue() const {
  if (dim() == 0) return 0.0;
  return eigenvalues().minCoeff();
}

bool HermitianMatrix::is_psd() const {
  if (dim() == 0) return true;
  const Eigen::VectorXd ev = eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  return ev.minCoeff() >= -kClipTolerance * scale;
}

SymplecticForm::SymplecticForm(Index modes) : modes_(modes), delta_(Eigen::MatrixXd::Zero(2 * modes, 2 * modes)) {
  if (modes < 1) throw Error(ErrorKind::InvalidRange, "symplectic form needs at least one mode");
  for (Index j = 0; j < modes; ++j) {
    delta_(2 * j, 2 * j + 1) = 1.0;
    delta_(2 * j + 1, 2 * j) = -1.0;
  }
}

void require_symmetric(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  if (!a.allFinite()) throw Error(ErrorKind::NotSymmetric, "matrix has non-finite entries");
  const double tol = kHermiticityTolerance * std::max(1.0, a.cwiseAbs().maxCoeff());
  const double dev = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (dev > tol) {
    std::ostringstream msg;
    msg << "max|A - A^T| = " << dev << " exceeds " << tol;
    throw Error(ErrorKind::NotSymmetric, msg.str());
  }
}

Eigen::VectorXd symplectic_spectrum(const Eigen::MatrixXd& alpha, const SymplecticForm& form) {
  require_symmetric(alpha);
  const Index n = 2 * form.modes();
  if (alpha.rows() != n) {
    throw Error(ErrorKind::DimensionMismatch, "covariance size does not match symplectic form");
  }
  const Eigen::MatrixXd sym = hermitian_part(alpha);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorKind::NotPositiveDefinite, "covariance must be positive definite");
  }
  const Eigen::MatrixXd root =
      es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  const Eigen::MatrixXd s = root * form.inverse() * root;
  const Eigen::MatrixXd squared = hermitian_part(Eigen::MatrixXd(s.transpose() * s));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pes(squared, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lam = pes.eigenvalues();

  Eigen::VectorXd nu(form.modes());
  for (Index j = 0; j < form.modes(); ++j) {
    const double lo = lam(2 * j);
    const double hi = lam(2 * j + 1);
    if (std::abs(hi - lo) > 1e-8 * std::max(1.0, std::abs(hi))) {
      std::ostringstream msg;
      msg << "eigenvalues " << lo << " and " << hi << " of -(Delta^{-1} alpha)^2 do not pair";
      throw Error(ErrorKind::PairingFailure, msg.str());
    }
    nu(j) = std::sqrt(std::max(0.5 * (lo + hi), 0.0));
  }
  std::sort(nu.data(), nu.data() + nu.size(), std::greater<>());
  return nu;
}

}  // namespace gaussmeter
