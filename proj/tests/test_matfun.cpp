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

#include <gtest/gtest.h>

#include "gaussmeter/fockoracle.hpp"
#include "gaussmeter/matfun.hpp"
#include "random_draws.hpp"

namespace gaussmeter {
namespace {

using cli::Rng;
using Complex = std::complex<double>;

TEST(GScalar, Examples) {
  EXPECT_EQ(g_scalar(0.0), 0.0);
  EXPECT_NEAR(g_scalar(1.0), 2.0, 1e-15);
  EXPECT_NEAR(g_scalar(1.0 / 3.0), 1.081704, 1e-6);
  EXPECT_NEAR(g_scalar(1.0, LogBase::Nats), 2.0 * std::log(2.0), 1e-15);
}

TEST(GScalar, ClipsTinyNegativeAndRejectsNegative) {
  EXPECT_EQ(g_scalar(-5e-13), 0.0);
  try {
    g_scalar(-1e-6);
    FAIL() << "expected NegativeArgument";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeArgument);
  }
  EXPECT_THROW(g_scalar(std::nan("")), Error);
}

TEST(GScalar, MatchesThermalEntropyFromFockSpectrum) {
  for (double mean : {1.0 / 3.0, 0.5, 2.0}) {
    const fock::FockOperator rho = fock::thermal_state(mean, fock::thermal_cutoff(mean, 1e-16));
    EXPECT_NEAR(fock::von_neumann_entropy(rho.matrix()), g_scalar(mean), 1e-10) << mean;
  }
}

TEST(GScalar, StableAcrossMagnitudes) {
  for (double x : {1e-300, 1e-12, 0.999999, 1.0, 1e8, 1e15}) {
    const double v = g_scalar(x, LogBase::Nats);
    EXPECT_TRUE(std::isfinite(v)) << x;
    EXPECT_GT(v, 0.0) << x;
  }
  // g(x) = log(x) + 1 + O(1/x) at large x.
  EXPECT_NEAR(g_scalar(1e8, LogBase::Nats), std::log(1e8) + 1.0, 1e-8);
  // g(x) ~ x(1 - log x) at small x.
  EXPECT_NEAR(g_scalar(1e-12, LogBase::Nats), 1e-12 * (1.0 - std::log(1e-12)), 1e-22);
}

TEST(GScalar, IncreasingAndConcave) {
  double prev = g_scalar(0.01);
  double prev_slope = HUGE_VAL;
  for (double x = 0.02; x < 50.0; x += 0.01) {
    const double v = g_scalar(x);
    const double slope = (v - prev) / 0.01;
    EXPECT_GT(v, prev) << x;
    EXPECT_LT(slope, prev_slope) << x;
    prev = v;
    prev_slope = slope;
  }
}

TEST(GMatrix, Examples) {
  EXPECT_NEAR(g_matrix(Eigen::MatrixXcd::Zero(3, 3)).cwiseAbs().maxCoeff(), 0.0, 0.0);
  EXPECT_NEAR(g_matrix(Eigen::MatrixXcd::Identity(2, 2)).trace().real(), 4.0, 1e-14);
  Rng rng(1);
  const Eigen::MatrixXcd u = cli::random_unitary(rng, 2);
  Eigen::Vector2d d(1.0, 1.0 / 3.0);
  const Eigen::MatrixXcd a = u * d.cast<Complex>().asDiagonal() * u.adjoint();
  EXPECT_NEAR(g_matrix(hermitian_part(a)).trace().real(), 3.081704, 1e-6);
}

TEST(GMatrix, UnitaryInvariance) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const Index s = 1 + t % 4;
    const HermitianMatrix a = cli::random_psd(rng, s, false);
    const Eigen::MatrixXcd u = cli::random_unitary(rng, s);
    const Eigen::MatrixXcd rotated = hermitian_part(Eigen::MatrixXcd(u * a.matrix() * u.adjoint()));
    EXPECT_NEAR(trace_g(rotated), trace_g(a.matrix()), 1e-9);
    EXPECT_NEAR(g_matrix(a.matrix()).trace().real(), trace_g(a.matrix()), 1e-9);
  }
}

TEST(GMatrix, RejectsInvalidInput) {
  Eigen::MatrixXcd a(2, 2);
  a << 1.0, 0.5, 0.0, 1.0;
  EXPECT_THROW(g_matrix(a), Error);
  try {
    g_matrix(Eigen::MatrixXcd(Eigen::Vector2cd(1.0, -0.1).asDiagonal()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeEigenvalue);
  }
}

TEST(PsdSqrt, Examples) {
  EXPECT_TRUE(psd_sqrt(Eigen::MatrixXcd::Identity(3, 3)).isApprox(Eigen::MatrixXcd::Identity(3, 3), 1e-14));
  const Eigen::MatrixXd d = Eigen::Vector2d(4.0, 9.0).asDiagonal();
  const Eigen::MatrixXd r = psd_sqrt(d);
  EXPECT_NEAR(r(0, 0), 2.0, 1e-14);
  EXPECT_NEAR(r(1, 1), 3.0, 1e-14);
  EXPECT_NEAR(std::abs(r(0, 1)), 0.0, 1e-14);
  // N (N + I)^{-1} at N = 1.
  EXPECT_NEAR(psd_sqrt(Eigen::MatrixXd::Constant(1, 1, 0.5))(0, 0), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(PsdSqrt, SquaresBackForConditionUpTo1e6) {
  Rng rng(3);
  std::uniform_real_distribution<double> expo(0.0, 6.0);
  for (int t = 0; t < 50; ++t) {
    const Index s = 2 + t % 4;
    const Eigen::MatrixXcd u = cli::random_unitary(rng, s);
    Eigen::VectorXd ev(s);
    ev(0) = 1.0;
    ev(1) = 1e-6;
    for (Index i = 2; i < s; ++i) ev(i) = std::pow(10.0, -expo(rng));
    const Eigen::MatrixXcd a = hermitian_part(Eigen::MatrixXcd(u * ev.cast<Complex>().asDiagonal() * u.adjoint()));
    const Eigen::MatrixXcd r = psd_sqrt(a);
    EXPECT_LE((r * r - a).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_GE(HermitianMatrix(r).min_eigenvalue(), -1e-12);
  }
}

TEST(HermitianMatrixType, ChecksAndSymmetrizes) {
  Eigen::MatrixXcd a(2, 2);
  a << 1.0, Complex(0.0, 1.0), Complex(0.0, -1.0 + 1e-12), 2.0;
  const HermitianMatrix h(a);
  EXPECT_EQ(hermiticity_deviation(h.matrix()), 0.0);
  a(1, 0) = Complex(0.0, -0.9);
  try {
    HermitianMatrix bad(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
  }
  EXPECT_THROW(HermitianMatrix(Eigen::MatrixXcd::Zero(2, 3)), Error);
  EXPECT_TRUE(HermitianMatrix::diagonal({1.0, 0.0}).is_psd());
  EXPECT_FALSE(HermitianMatrix::diagonal({1.0, -0.1}).is_psd());
}

TEST(HermitianMatrixType, ToleranceIsRelative) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(2, 2) * 1e6;
  a(0, 1) = 5e-5;  // relative deviation 5e-11
  EXPECT_NO_THROW(HermitianMatrix{a});
  a(0, 1) = 5e-3;
  EXPECT_THROW(HermitianMatrix{a}, Error);
}

TEST(SymplecticFormType, Structure) {
  const SymplecticForm f(3);
  EXPECT_TRUE((f.matrix() + f.matrix().transpose()).isZero());
  EXPECT_TRUE((f.matrix() * f.matrix()).isApprox(-Eigen::MatrixXd::Identity(6, 6)));
  EXPECT_TRUE((f.matrix() * f.inverse()).isIdentity());
  EXPECT_THROW(SymplecticForm(0), Error);
}

TEST(SymplecticSpectrum, Examples) {
  const SymplecticForm f(1);
  EXPECT_NEAR(symplectic_spectrum(0.5 * Eigen::Matrix2d::Identity(), f)(0), 0.5, 1e-14);
  EXPECT_NEAR(symplectic_spectrum(1.5 * Eigen::Matrix2d::Identity(), f)(0), 1.5, 1e-14);
  EXPECT_NEAR(symplectic_spectrum(Eigen::Matrix2d(Eigen::Vector2d(2.0, 0.5).asDiagonal()), f)(0), 1.0, 1e-14);
}

TEST(SymplecticSpectrum, Errors) {
  const SymplecticForm f(1);
  Eigen::Matrix2d a;
  a << 1.0, 0.2, 0.0, 1.0;
  EXPECT_THROW(symplectic_spectrum(a, f), Error);
  try {
    symplectic_spectrum(Eigen::Matrix2d(Eigen::Vector2d(1.0, -1.0).asDiagonal()), f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPositiveDefinite);
  }
  EXPECT_THROW(symplectic_spectrum(Eigen::Matrix4d::Identity(), f), Error);
}

TEST(SymplecticSpectrum, OneModeIsSqrtDet) {
  Rng rng(4);
  const SymplecticForm f(1);
  for (int t = 0; t < 50; ++t) {
    const Eigen::MatrixXd s = cli::random_complex(rng, 2, 2).real();
    const Eigen::MatrixXd alpha = s * s.transpose() + 0.1 * Eigen::Matrix2d::Identity();
    EXPECT_NEAR(symplectic_spectrum(alpha, f)(0), std::sqrt(alpha.determinant()),
                1e-10 * std::max(1.0, std::sqrt(alpha.determinant())));
  }
}

TEST(SymplecticSpectrum, InvariantUnderSymplecticCongruence) {
  Rng rng(5);
  for (Index modes : {1, 2}) {
    const SymplecticForm f(modes);
    for (int t = 0; t < 30; ++t) {
      const Eigen::MatrixXd s = cli::random_symplectic(rng, modes);
      EXPECT_LE((s.transpose() * f.matrix() * s - f.matrix()).cwiseAbs().maxCoeff(), 1e-10);
      const Eigen::MatrixXd alpha = cli::random_admissible_covariance(rng, modes);
      Eigen::MatrixXd moved = s * alpha * s.transpose();
      moved = 0.5 * (moved + moved.transpose());
      EXPECT_LE((symplectic_spectrum(moved, f) - symplectic_spectrum(alpha, f)).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(SymplecticSpectrum, SortedDescending) {
  const SymplecticForm f(3);
  const Eigen::VectorXd d = (Eigen::VectorXd(6) << 0.7, 0.7, 3.0, 3.0, 1.2, 1.2).finished();
  const Eigen::VectorXd nu = symplectic_spectrum(Eigen::MatrixXd(d.asDiagonal()), f);
  EXPECT_NEAR(nu(0), 3.0, 1e-12);
  EXPECT_NEAR(nu(1), 1.2, 1e-12);
  EXPECT_NEAR(nu(2), 0.7, 1e-12);
}

TEST(ErrorKinds, Names) {
  EXPECT_EQ(to_string(ErrorKind::GridMassDeficit), "GridMassDeficit");
  const Error e(ErrorKind::SingularSum, "x");
  EXPECT_EQ(std::string(e.what()), "SingularSum: x");
  EXPECT_EQ(e.detail(), "x");
}

}  // namespace
}  // namespace gaussmeter
