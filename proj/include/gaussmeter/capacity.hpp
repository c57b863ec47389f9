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

// Energy-constrained entanglement-assisted capacity of gauge-covariant
// Gaussian measurement channels.

#include <cstdint>
#include <optional>
#include <vector>

#include "gaussmeter/gauge.hpp"
#include "gaussmeter/matfun.hpp"

namespace gaussmeter {

/// Mean-energy constraint Sp(epsilon Lambda) <= E for H = sum eps_jk a_j^dagger a_k.
class EnergyConstraint {
 public:
  EnergyConstraint(HermitianMatrix epsilon, double energy);

  Index modes() const { return epsilon_.dim(); }
  const HermitianMatrix& epsilon() const { return epsilon_; }
  double energy() const { return energy_; }
  /// Sp(epsilon Lambda)
  double energy_of(const HermitianMatrix& lambda) const;

 private:
  HermitianMatrix epsilon_;
  double energy_;
};

// One-mode closed forms; E is the mean photon number of the input, N the noise.
double cea_one_mode(double energy, double noise, LogBase base = LogBase::Bits);
double c_unassisted_one_mode(double energy, double noise, LogBase base = LogBase::Bits);
double gain(double energy, double noise, LogBase base = LogBase::Bits);
/// lim_{E -> inf} (C_ea - C) = log e - N log(1 + 1/N)
double excess_limit(double noise, LogBase base = LogBase::Bits);

struct OptimizerSettings {
  unsigned starts = 8;
  unsigned max_iterations = 10000;
  double gradient_tolerance = 1e-8;
  std::uint64_t seed = 0;
};

struct OptimizerDiagnostics {
  bool converged = false;
  unsigned iterations = 0;   // of the winning start
  double gradient_norm = 0;  // projected, at the winning point
  unsigned best_start = 0;
  std::vector<double> start_values;
};

struct CapacityReport {
  double cea = 0.0;
  std::optional<double> c_unassisted;  // one mode only
  std::optional<double> gain;          // one mode only
  GaugeState optimizer_lambda;
  double energy_used = 0.0;
  LogBase base = LogBase::Bits;
  OptimizerDiagnostics diagnostics;
};

/// Maximizes Sp g(Lambda) - Sp g(Ntilde(Lambda)) over Lambda >= 0 on the shell
/// Sp(epsilon Lambda) = E. The search is restricted to Gaussian inputs, which
/// is exact: for fixed Lambda the gauge-invariant Gaussian state maximizes the
/// entropy reduction. Concavity in Lambda is not assumed, hence the multistart.
/// A run that hits the iteration cap is reported with converged = false.
CapacityReport cea_multimode(const GaugeMeasurement& meas, const EnergyConstraint& constraint,
                             LogBase base = LogBase::Bits, const OptimizerSettings& opts = {});

struct SweepRow {
  double noise;
  double energy;
  double cea;
  double c;
  double gain;
};

/// One row per (N, E), sorted by N then E.
std::vector<SweepRow> sweep_one_mode(std::vector<double> noise_values, std::vector<double> energy_grid,
                                     LogBase base = LogBase::Bits);

std::vector<double> log_spaced(double min, double max, std::size_t count);
std::vector<double> linear_spaced(double min, double max, std::size_t count);

}  // namespace gaussmeter
