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

#include "random_draws.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace gaussmeter::cli {

Eigen::MatrixXcd random_complex(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = {normal(rng), normal(rng)};
  return m;
}

Eigen::MatrixXcd random_unitary(Rng& rng, Index s) {
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_complex(rng, s, s));
  return qr.householderQ();
}

HermitianMatrix random_psd(Rng& rng, Index s, bool allow_degenerate) {
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_real_distribution<double> size(0.1, 3.0);
  Index rank = s;
  if (allow_degenerate) {
    const int k = kind(rng);
    if (k == 0) return HermitianMatrix::zero(s);
    if (k == 1) rank = std::max<Index>(1, s - 1);
  }
  const Eigen::MatrixXcd g = random_complex(rng, s, rank);
  const Eigen::MatrixXcd a = g * g.adjoint() * (size(rng) / static_cast<double>(s));
  return HermitianMatrix(hermitian_part(a));
}

Eigen::MatrixXd random_symplectic(Rng& rng, Index modes, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  const Index n = 2 * modes;
  Eigen::MatrixXd h(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) h(i, j) = normal(rng);
  const Eigen::MatrixXd sym = 0.5 * (h + h.transpose());
  const SymplecticForm form(modes);
  return Eigen::MatrixXd(form.matrix() * sym).exp();
}

Eigen::MatrixXd random_admissible_covariance(Rng& rng, Index modes) {
  std::uniform_real_distribution<double> excess(0.0, 2.0);
  Eigen::VectorXd diag(2 * modes);
  for (Index j = 0; j < modes; ++j) diag(2 * j) = diag(2 * j + 1) = 0.5 + excess(rng);
  const Eigen::MatrixXd s = random_symplectic(rng, modes);
  const Eigen::MatrixXd alpha = s * diag.asDiagonal() * s.transpose();
  return 0.5 * (alpha + alpha.transpose());
}

fock::FockOperator random_density(Rng& rng, int d, int rank) {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  for (int r = 0; r < rank; ++r) {
    Eigen::VectorXcd psi = random_complex(rng, d, 1).col(0);
    for (int n = 0; n < d; ++n) psi(n) *= std::exp(-n / 3.0);
    psi.normalize();
    rho += weight(rng) * psi * psi.adjoint();
  }
  rho /= rho.trace().real();
  return fock::FockOperator(hermitian_part(rho), d);
}

fock::FockOperator random_diagonal_state(Rng& rng, int d, double mean) {
  // Mix a random distribution on d levels with the vacuum or a top level so the mean hits `mean`.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd p(d);
  for (int n = 0; n < d; ++n) p(n) = unit(rng) * std::exp(-n / (mean + 0.5));
  p /= p.sum();
  const double m = (Eigen::VectorXd::LinSpaced(d, 0, d - 1).array() * p.array()).sum();
  Eigen::VectorXd anchor = Eigen::VectorXd::Zero(d);
  double anchor_mean = 0.0;
  if (m > mean) {
    anchor(0) = 1.0;
  } else {
    anchor(d - 1) = 1.0;
    anchor_mean = d - 1.0;
  }
  const double t = (mean - anchor_mean) / (m - anchor_mean);
  p = t * p + (1.0 - t) * anchor;
  return fock::FockOperator(p.cast<std::complex<double>>().asDiagonal().toDenseMatrix(), d);
}

}  // namespace gaussmeter::cli
