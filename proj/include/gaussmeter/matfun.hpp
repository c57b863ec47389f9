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

// Spectral calculus on Hermitian (or real symmetric) matrices, the bosonic
// entropy function g, and symplectic spectra of real covariance matrices.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>

#include "gaussmeter/error.hpp"

namespace gaussmeter {

using Index = Eigen::Index;

enum class LogBase { Bits, Nats };

/// Natural logarithm of the base; divide a value in nats by this to convert.
inline double log_of_base(LogBase base) { return base == LogBase::Bits ? std::log(2.0) : 1.0; }

/// Eigenvalues in [-clip, 0] are treated as zero.
inline constexpr double kClipTolerance = 1e-12;
/// Relative tolerance on max|A - A^dagger| when a matrix is accepted as Hermitian.
inline constexpr double kHermiticityTolerance = 1e-10;

/// g(x) = (x+1) log(x+1) - x log x, the entropy of a one-mode thermal state
/// with mean photon number x. Values in [-kClipTolerance, 0] are clipped.
double g_scalar(double x, LogBase base = LogBase::Bits);

namespace detail {
double clip_eigenvalue(double lambda, double scale);
[[noreturn]] void throw_not_hermitian(double deviation, double tolerance);
}  // namespace detail

/// Largest entrywise deviation from (conjugate) symmetry.
template <typename Derived>
double hermiticity_deviation(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& a, double rel_tol = kHermiticityTolerance) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix is not square");
  }
  if (!a.allFinite()) throw Error(ErrorKind::NotHermitian, "matrix has non-finite entries");
  if (a.size() == 0) return;
  const double tol = rel_tol * std::max(1.0, a.cwiseAbs().maxCoeff());
  const double dev = hermiticity_deviation(a);
  if (dev > tol) detail::throw_not_hermitian(dev, tol);
}

/// (A + A^dagger) / 2
template <typename Derived>
typename Derived::PlainObject hermitian_part(const Eigen::MatrixBase<Derived>& a) {
  return (a + a.adjoint()) / 2.0;
}

/// f(A) = U f(D) U^dagger for Hermitian A. No validation; callers check first.
template <typename Derived, typename Fn>
typename Derived::PlainObject spectral_apply(const Eigen::MatrixBase<Derived>& a, Fn&& fn) {
  using Plain = typename Derived::PlainObject;
  Eigen::SelfAdjointEigenSolver<Plain> es(hermitian_part(a));
  Eigen::VectorXd mapped = es.eigenvalues().unaryExpr(fn);
  return es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
}

/// Eigenvalues of a Hermitian PSD matrix after clipping, ascending.
/// Throws NegativeEigenvalue below the clip tolerance.
template <typename Derived>
Eigen::VectorXd psd_eigenvalues(const Eigen::MatrixBase<Derived>& a) {
  require_hermitian(a);
  using Plain = typename Derived::PlainObject;
  Eigen::SelfAdjointEigenSolver<Plain> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  const double scale = ev.size() ? std::max(1.0, ev.cwiseAbs().maxCoeff()) : 1.0;
  for (auto& v : ev) v = detail::clip_eigenvalue(v, scale);
  return ev;
}

/// Square root of a Hermitian PSD matrix.
template <typename Derived>
typename Derived::PlainObject psd_sqrt(const Eigen::MatrixBase<Derived>& a) {
  psd_eigenvalues(a);
  return spectral_apply(a, [](double v) { return std::sqrt(std::max(v, 0.0)); });
}

/// g applied through the spectral calculus: U g(D) U^dagger.
template <typename Derived>
typename Derived::PlainObject g_matrix(const Eigen::MatrixBase<Derived>& a, LogBase base = LogBase::Bits) {
  psd_eigenvalues(a);
  return spectral_apply(a, [base](double v) { return g_scalar(std::max(v, 0.0), base); });
}

/// Sp g(A) = sum of g over the (clipped) eigenvalues.
template <typename Derived>
double trace_g(const Eigen::MatrixBase<Derived>& a, LogBase base = LogBase::Bits) {
  double total = 0.0;
  for (double v : psd_eigenvalues(a)) total += g_scalar(v, base);
  return total;
}

/// Complex Hermitian s x s matrix. Construction checks Hermiticity to a relative
/// tolerance and stores the symmetrized matrix.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const Eigen::MatrixXcd& m);

  static HermitianMatrix zero(Index s);
  static HermitianMatrix identity(Index s);
  static HermitianMatrix diagonal(const Eigen::VectorXd& d);
  static HermitianMatrix diagonal(std::initializer_list<double> d);
  static HermitianMatrix scalar(double v) { return diagonal({v}); }

  Index dim() const { return m_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Eigen::VectorXd eigenvalues() const;
  double min_eigenvalue() const;
  bool is_psd() const;

 private:
  Eigen::MatrixXcd m_;
};

/// Block-diagonal symplectic form with [[0, 1], [-1, 0]] blocks, coordinates
/// interleaved as (x1, p1, ..., xs, ps).
class SymplecticForm {
 public:
  explicit SymplecticForm(Index modes);

  Index modes() const { return modes_; }
  const Eigen::MatrixXd& matrix() const { return delta_; }
  /// Delta^{-1} = -Delta.
  Eigen::MatrixXd inverse() const { return -delta_; }

 private:
  Index modes_;
  Eigen::MatrixXd delta_;
};

void require_symmetric(const Eigen::MatrixXd& a);

/// Symplectic eigenvalues nu_1 >= ... >= nu_s of a positive-definite alpha:
/// the moduli of the eigenvalues of Delta^{-1} alpha. Computed from the
/// symmetric matrix -S^2, S = alpha^{1/2} Delta^{-1} alpha^{1/2}, which is
/// similar to -(Delta^{-1} alpha)^2; its eigenvalues must come in equal pairs.
Eigen::VectorXd symplectic_spectrum(const Eigen::MatrixXd& alpha, const SymplecticForm& form);

}  // namespace gaussmeter
