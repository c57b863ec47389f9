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

#include <cmath>
#include <sstream>

#include "cli.hpp"
#include "gaussmeter/fockoracle.hpp"
#include "gaussmeter/gauge.hpp"
#include "gaussmeter/symplectic.hpp"
#include "random_draws.hpp"

namespace gaussmeter::cli {

namespace {

using Complex = std::complex<double>;

GaugeState scalar_state(double lambda) { return GaugeState(HermitianMatrix::scalar(lambda)); }
GaugeMeasurement scalar_noise(double noise) { return GaugeMeasurement(HermitianMatrix::scalar(noise)); }

int input_cutoff(double mean) { return std::max(40, fock::thermal_cutoff(mean)); }

CheckResult bounded(std::string name, double worst, double tolerance, std::size_t trials) {
  return {std::move(name), worst <= tolerance, worst, tolerance, trials};
}

std::string pair_label(double lambda, double noise) {
  std::ostringstream s;
  s << "(Lambda=" << lambda << ", N=" << noise << ")";
  return s.str();
}

std::vector<CheckResult> lemma1() {
  std::vector<CheckResult> out;
  const double edge = std::sqrt(2.0);
  for (const auto& [lambda, noise] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}}) {
    const GaugePosterior closed = posterior_params(scalar_state(lambda), scalar_noise(noise));
    const Complex k = closed.K(0, 0);
    const double ntilde = closed.Ntilde.matrix()(0, 0).real();
    const fock::FockOperator rho = fock::thermal_state(lambda, input_cutoff(lambda));
    double worst = 0.0;
    std::size_t trials = 0;
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const Complex z(-edge + edge * i / 2.0, -edge + edge * j / 2.0);
        const fock::Posterior post = fock::posterior_state(rho, noise, z);
        const Eigen::MatrixXcd expected = fock::displaced_thermal(ntilde, -k * z, post.state.cutoff());
        worst = std::max(worst, fock::trace_distance(post.state.matrix(), expected));
        ++trials;
      }
    }
    out.push_back(bounded("lemma1 posterior trace distance " + pair_label(lambda, noise), worst, 1e-4, trials));
  }
  return out;
}

std::vector<CheckResult> theorem2() {
  std::vector<CheckResult> out;
  for (const auto& [lambda, noise] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}, std::pair{2.0, 0.5}}) {
    const double closed = entropy_reduction_gauge(scalar_state(lambda), scalar_noise(noise));
    const fock::ErEstimate numeric = fock::er_numeric(fock::thermal_state(lambda, input_cutoff(lambda)), noise,
                                                      fock::default_grid(lambda, noise));
    out.push_back(
        bounded("theorem2 oracle vs closed form " + pair_label(lambda, noise), std::abs(numeric.value - closed), 1e-2, 1));
  }
  return out;
}

std::vector<CheckResult> prop1(std::uint64_t seed) {
  Rng rng(seed);
  constexpr double kNoise = 1.0;
  constexpr int kStates = 5;
  double worst = -HUGE_VAL;
  for (int t = 0; t < kStates; ++t) {
    const fock::FockOperator rho = random_density(rng, 12, 1 + t % 3);
    const fock::FockOperator averaged = fock::gauge_average(rho);
    const double mean = fock::normal_moments(rho).lambda;
    const fock::OutcomeGrid grid = fock::default_grid(mean, kNoise);
    const double er = fock::er_numeric(rho, kNoise, grid).value;
    const double er_gi = fock::er_numeric(averaged, kNoise, grid).value;
    worst = std::max(worst, er - er_gi);
  }
  return {bounded("prop1 ER(rho) - ER(rho_gi)", worst, 5e-3, kStates)};
}

std::vector<CheckResult> cp(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> modes(1, 3);
  double worst = -HUGE_VAL;
  constexpr int kDraws = 200;
  for (int t = 0; t < kDraws; ++t) {
    const Index s = modes(rng);
    const GaugeState state(random_psd(rng, s));
    const GaugeMeasurement meas(random_psd(rng, s));
    worst = std::max(worst, -cp_certificate(dual_channel_params(state, meas)).margin);
  }
  const CpCertificate exact = cp_certificate(dual_channel_params(scalar_state(1.0), scalar_noise(1.0)));
  const double exact_dev =
      std::max(std::abs(exact.margin_minus - 1.0 / 9.0), std::abs(exact.margin_plus - 8.0 / 9.0));
  return {bounded("cp random certificates (-margin)", worst, 1e-9, kDraws),
          bounded("cp exact margins at Lambda=N=1", exact_dev, 1e-12, 1)};
}

std::vector<CheckResult> correspondence(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_int_distribution<int> modes(1, 3);
  double worst = 0.0;
  constexpr int kDraws = 100;
  for (int t = 0; t < kDraws; ++t) {
    const Index s = modes(rng);
    const GaugeState state(random_psd(rng, s));
    const GaugeMeasurement meas(random_psd(rng, s));
    const EmbeddedGauge embedded = embed_gauge_invariant(state, meas);
    const double general = entropy_reduction_general(embedded.alpha, embedded.measurement);
    worst = std::max(worst, std::abs(general - entropy_reduction_gauge(state, meas)));
  }
  return {bounded("correspondence |ER_general - ER_gauge|", worst, 1e-9, kDraws)};
}

}  // namespace

std::vector<std::string> verification_cases() { return {"lemma1", "theorem2", "prop1", "cp", "correspondence"}; }

std::vector<CheckResult> run_verification(const std::string& which, std::uint64_t seed) {
  if (which == "lemma1") return lemma1();
  if (which == "theorem2") return theorem2();
  if (which == "prop1") return prop1(seed);
  if (which == "cp") return cp(seed);
  if (which == "correspondence") return correspondence(seed);
  if (which == "all") {
    std::vector<CheckResult> out;
    for (const std::string& name : verification_cases()) {
      for (CheckResult& r : run_verification(name, seed)) out.push_back(std::move(r));
    }
    return out;
  }
  throw Error(ErrorKind::InvalidRange, "unknown verification case " + which);
}

}  // namespace gaussmeter::cli
