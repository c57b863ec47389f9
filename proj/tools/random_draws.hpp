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

// Seeded random draws used by the verification suites and the tests.

#include <Eigen/Dense>
#include <random>

#include "gaussmeter/fockoracle.hpp"
#include "gaussmeter/matfun.hpp"

namespace gaussmeter::cli {

using Rng = std::mt19937_64;

Eigen::MatrixXcd random_complex(Rng& rng, Index rows, Index cols);
Eigen::MatrixXcd random_unitary(Rng& rng, Index s);

/// G G^dagger scaled to a random size; sometimes rank deficient or zero.
HermitianMatrix random_psd(Rng& rng, Index s, bool allow_degenerate = true);

/// exp(Delta H) for a random symmetric H, which preserves Delta.
Eigen::MatrixXd random_symplectic(Rng& rng, Index modes, double scale = 0.5);

/// S diag(nu_1, nu_1, ...) S^T with nu_j >= 1/2.
Eigen::MatrixXd random_admissible_covariance(Rng& rng, Index modes);

/// Mixture of `rank` random pure states on d levels with amplitudes damped by
/// exp(-n / 3).
fock::FockOperator random_density(Rng& rng, int d, int rank);

/// Fock-diagonal state on d levels with random weights and mean photon number `mean`.
fock::FockOperator random_diagonal_state(Rng& rng, int d, double mean);

}  // namespace gaussmeter::cli
