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

#include <unsupported/Eigen/MatrixFunctions>

#include "gaussmeter/fockoracle.hpp"
#include "gaussmeter/symplectic.hpp"
#include "random_draws.hpp"

namespace gaussmeter {
namespace {

using cli::Rng;
using Complex = std::complex<double>;

Eigen::MatrixXd diag2(double a, double b) { return Eigen::Vector2d(a, b).asDiagonal(); }
Eigen::MatrixXd iso(Index modes, double v) { return v * Eigen::MatrixXd::Identity(2 * modes, 2 * modes); }

TEST(ValidateCovariance, Examples) {
  const SymplecticForm f(1);
  const CovarianceCheck vac = validate_covariance(iso(1, 0.5), f);
  EXPECT_TRUE(vac.admissible);
  EXPECT_NEAR(vac.margin, 0.0, 1e-15);
  EXPECT_FALSE(validate_covariance(iso(1, 0.25), f).admissible);
  const CovarianceCheck sq = validate_covariance(diag2(2.0, 0.125), f);
  EXPECT_TRUE(sq.admissible);
  EXPECT_NEAR(sq.margin, 0.0, 1e-14);
  EXPECT_FALSE(validate_covariance(diag2(2.0, 0.12), f).admissible);
  Eigen::Matrix2d asym;
  asym << 1.0, 0.3, 0.0, 1.0;
  EXPECT_THROW(validate_covariance(asym, f), Error);
}

TEST(RealCovarianceType, Rejects) {
  try {
    RealCovariance bad(iso(1, 0.25));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidCovariance);
  }
  EXPECT_THROW(RealCovariance(Eigen::MatrixXd::Identity(3, 3)), Error);
  EXPECT_EQ(RealCovariance::vacuum(2).modes(), 2);
}

TEST(GaussianEntropy, Examples) {
  EXPECT_NEAR(gaussian_entropy(RealCovariance::vacuum(1)), 0.0, 1e-15);
  EXPECT_NEAR(gaussian_entropy(RealCovariance(iso(1, 1.5))), 2.0, 1e-13);
  // nu = 1 for diag(2, 1/2), so the entropy is g(1/2).
  EXPECT_NEAR(gaussian_entropy(RealCovariance(diag2(2.0, 0.5))), g_scalar(0.5), 1e-13);
  EXPECT_NEAR(gaussian_entropy(RealCovariance(diag2(2.0, 0.5))), 1.377444, 1e-6);
}

TEST(GaussianEntropy, MatchesFockThermalEntropy) {
  for (double mean : {0.2, 1.0, 3.0}) {
    const fock::FockOperator rho = fock::thermal_state(mean, fock::thermal_cutoff(mean, 1e-16));
    EXPECT_NEAR(gaussian_entropy(RealCovariance(iso(1, mean + 0.5))), fock::von_neumann_entropy(rho.matrix()), 1e-10);
  }
}

TEST(GaussianEntropy, SymplecticInvariance) {
  Rng rng(21);
  for (Index modes : {1, 2, 3}) {
    for (int t = 0; t < 20; ++t) {
      const Eigen::MatrixXd alpha = cli::random_admissible_covariance(rng, modes);
      const Eigen::MatrixXd s = cli::random_symplectic(rng, modes);
      const Eigen::MatrixXd moved = s * alpha * s.transpose();
      EXPECT_NEAR(gaussian_entropy(RealCovariance(0.5 * (moved + moved.transpose()))),
                  gaussian_entropy(RealCovariance(alpha)), 1e-8);
    }
  }
}

TEST(PosteriorCovariance, Examples) {
  const RealCovariance tilde = posterior_covariance(RealCovariance(iso(1, 1.5)), RealCovariance(iso(1, 1.5)));
  EXPECT_LE((tilde.matrix() - iso(1, 5.0 / 6.0)).cwiseAbs().maxCoeff(), 1e-14);
  const RealCovariance het = posterior_covariance(RealCovariance::vacuum(1), RealCovariance::vacuum(1));
  EXPECT_LE((het.matrix() - iso(1, 0.5)).cwiseAbs().maxCoeff(), 1e-14);
  const RealCovariance sq = posterior_covariance(RealCovariance(diag2(2.0, 0.5)), RealCovariance(iso(1, 1.5)));
  EXPECT_NEAR(sq.matrix()(0, 0), 13.0 / 14.0, 1e-13);
  EXPECT_NEAR(sq.matrix()(1, 1), 0.5, 1e-13);
  EXPECT_NEAR(sq.matrix()(0, 1), 0.0, 1e-14);
}

TEST(PosteriorCovariance, Errors) {
  try {
    posterior_covariance(RealCovariance::vacuum(1), RealCovariance::vacuum(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
  const RealCovariance skewed(diag2(1e8, 2.5e-9));
  try {
    posterior_covariance(skewed, skewed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularSum);
  }
}

TEST(PosteriorCovariance, RandomInputsStayAdmissible) {
  Rng rng(22);
  for (Index modes : {1, 2, 3}) {
    for (int t = 0; t < 40; ++t) {
      const RealCovariance alpha(cli::random_admissible_covariance(rng, modes));
      const RealCovariance beta(cli::random_admissible_covariance(rng, modes));
      const RealCovariance tilde = posterior_covariance(alpha, beta);
      EXPECT_TRUE(validate_covariance(tilde.matrix(), tilde.form()).admissible);
      EXPECT_GE(entropy_reduction_general(alpha, GeneralMeasurement(beta)), -1e-9);
    }
  }
}

TEST(PosteriorCovariance, SymplecticCovariance) {
  // Transforming state and measurement by the same symplectic map leaves the
  // posterior entropy unchanged.
  Rng rng(23);
  for (int t = 0; t < 30; ++t) {
    const Index modes = 1 + t % 2;
    const Eigen::MatrixXd a = cli::random_admissible_covariance(rng, modes);
    const Eigen::MatrixXd b = cli::random_admissible_covariance(rng, modes);
    const Eigen::MatrixXd s = cli::random_symplectic(rng, modes);
    auto move = [&](const Eigen::MatrixXd& m) {
      const Eigen::MatrixXd r = s * m * s.transpose();
      return RealCovariance(0.5 * (r + r.transpose()));
    };
    EXPECT_NEAR(entropy_reduction_general(move(a), GeneralMeasurement(move(b))),
                entropy_reduction_general(RealCovariance(a), GeneralMeasurement(RealCovariance(b))), 1e-8);
  }
}

TEST(EntropyReductionGeneral, Examples) {
  const GeneralMeasurement meas(RealCovariance(iso(1, 1.5)));
  EXPECT_NEAR(entropy_reduction_general(RealCovariance(iso(1, 1.5)), meas), 0.918296, 1e-6);
  EXPECT_NEAR(entropy_reduction_general(RealCovariance(iso(1, 1.5)), meas), 2.0 - g_scalar(1.0 / 3.0), 1e-12);
  EXPECT_NEAR(entropy_reduction_general(RealCovariance::vacuum(1), meas), 0.0, 1e-12);
}

TEST(EntropyReductionGeneral, PureInputsGiveZero) {
  Rng rng(24);
  for (Index modes : {1, 2, 3}) {
    for (int t = 0; t < 10; ++t) {
      const Eigen::MatrixXd s = cli::random_symplectic(rng, modes);
      const Eigen::MatrixXd pure = 0.5 * s * s.transpose();
      const RealCovariance alpha(0.5 * (pure + pure.transpose()));
      const GeneralMeasurement meas(RealCovariance(cli::random_admissible_covariance(rng, modes)));
      EXPECT_NEAR(entropy_reduction_general(alpha, meas), 0.0, 1e-9);
    }
  }
}

// Squeezed thermal state with mean thermal number 1/2 and squeezing e^{2r} = 2
// has covariance diag(2, 1/2); beta = 3/2 I is the gauge measurement with N = 1.
TEST(EntropyReductionGeneral, SqueezedInputMatchesOracle) {
  const int work = 200;
  const int d = 60;
  const double r = 0.5 * std::log(2.0);
  const Eigen::MatrixXcd a = fock::annihilation(work);
  const Eigen::MatrixXcd squeeze = Eigen::MatrixXcd(0.5 * r * (a * a - a.adjoint() * a.adjoint())).exp();
  const Eigen::MatrixXcd thermal = fock::thermal_state(0.5, work).matrix();
  const Eigen::MatrixXcd full = squeeze * thermal * squeeze.adjoint();
  const fock::FockOperator rho(hermitian_part(Eigen::MatrixXcd(full.topLeftCorner(d, d))), d);
  const fock::NormalMoments m = fock::normal_moments(rho);
  ASSERT_NEAR(m.lambda, 0.75, 1e-9);
  ASSERT_NEAR(std::abs(m.anomalous), 0.75, 1e-9);

  const double closed = entropy_reduction_general(RealCovariance(diag2(2.0, 0.5)), GeneralMeasurement(RealCovariance(iso(1, 1.5))));
  const fock::ErEstimate numeric = fock::er_numeric(rho, 1.0, fock::default_grid(m.lambda, 1.0));
  EXPECT_NEAR(numeric.value, closed, 1e-2);
  EXPECT_NEAR(closed, 0.6466166, 1e-6);
}

TEST(RealRepresentation, Blocks) {
  Eigen::MatrixXcd h(2, 2);
  h << 1.0, Complex(0.0, 1.0), Complex(0.0, -1.0), 2.0;
  const Eigen::MatrixXd r = real_representation(h);
  Eigen::MatrixXd expected(4, 4);
  expected << 1, 0, 0, -1,  //
      0, 1, 1, 0,           //
      0, 1, 2, 0,           //
      -1, 0, 0, 2;
  EXPECT_TRUE(r.isApprox(expected));
  EXPECT_TRUE(r.isApprox(r.transpose()));
}

TEST(EmbedGaugeInvariant, Examples) {
  const EmbeddedGauge one = embed_gauge_invariant(GaugeState(HermitianMatrix::scalar(1.0)),
                                                  GaugeMeasurement(HermitianMatrix::scalar(1.0)));
  EXPECT_TRUE(one.alpha.matrix().isApprox(iso(1, 1.5)));
  EXPECT_TRUE(one.measurement.noise().matrix().isApprox(iso(1, 1.5)));
  const EmbeddedGauge vac = embed_gauge_invariant(GaugeState::vacuum(1), GaugeMeasurement::heterodyne(1));
  EXPECT_TRUE(vac.alpha.matrix().isApprox(iso(1, 0.5)));

  Eigen::MatrixXcd lambda(2, 2);
  lambda << 1.0, Complex(0.3, -0.4), Complex(0.3, 0.4), 0.8;
  const GaugeState state{HermitianMatrix(lambda)};
  const GaugeMeasurement meas{HermitianMatrix::diagonal({0.5, 2.0})};
  const EmbeddedGauge e = embed_gauge_invariant(state, meas);
  EXPECT_NEAR(entropy_reduction_general(e.alpha, e.measurement), entropy_reduction_gauge(state, meas), 1e-9);
}

TEST(EmbedGaugeInvariant, SymplecticSpectrumIsLambdaSpectrumPlusHalf) {
  Rng rng(25);
  for (int t = 0; t < 20; ++t) {
    const Index s = 1 + t % 3;
    const HermitianMatrix lambda = cli::random_psd(rng, s);
    const EmbeddedGauge e = embed_gauge_invariant(GaugeState(lambda), GaugeMeasurement::heterodyne(s));
    Eigen::VectorXd ev = lambda.eigenvalues().array() + 0.5;
    std::sort(ev.data(), ev.data() + s, std::greater<>());
    EXPECT_LE((e.alpha.symplectic_eigenvalues() - ev).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(EmbedGaugeInvariant, CorrespondenceOverRandomDraws) {
  Rng rng(26);
  for (int t = 0; t < 100; ++t) {
    const Index s = 1 + t % 3;
    const GaugeState state(cli::random_psd(rng, s));
    const GaugeMeasurement meas(cli::random_psd(rng, s));
    const EmbeddedGauge e = embed_gauge_invariant(state, meas);
    EXPECT_NEAR(entropy_reduction_general(e.alpha, e.measurement), entropy_reduction_gauge(state, meas), 1e-9);
    // Posterior covariance corresponds to Ntilde + I/2.
    const Eigen::MatrixXd expected =
        real_representation(posterior_params(state, meas).Ntilde.matrix() + 0.5 * Eigen::MatrixXcd::Identity(s, s));
    EXPECT_LE((posterior_covariance(e.alpha, e.measurement.noise()).matrix() - expected).cwiseAbs().maxCoeff(), 1e-9);
  }
}

}  // namespace
}  // namespace gaussmeter
