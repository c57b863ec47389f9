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

#include "gaussmeter/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gaussmeter/parallel.hpp"

namespace gaussmeter {

namespace {

void require_one_mode_args(double energy, double noise) {
  if (!(energy > 0.0) || !(noise >= 0.0) || !std::isfinite(energy) || !std::isfinite(noise)) {
    std::ostringstream msg;
    msg << "need E > 0 and N >= 0, got E = " << energy << ", N = " << noise;
    throw Error(ErrorKind::InvalidRange, msg.str());
  }
}

double real_inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a.conjugate().cwiseProduct(b)).sum().real();
}

struct RunResult {
  Eigen::MatrixXcd factor;
  double value = 0.0;
  double gradient_norm = 0.0;
  unsigned iterations = 0;
  bool converged = false;
};

class ShellAscent {
 public:
  ShellAscent(const GaugeMeasurement& meas, const EnergyConstraint& constraint, LogBase base,
              const OptimizerSettings& opts)
      : meas_(meas), constraint_(constraint), base_(base), opts_(opts) {}

  RunResult run(Eigen::MatrixXcd factor) const {
    RunResult out;
    factor = to_shell(factor);
    double value = objective(factor);
    double step = 1.0;
    for (unsigned it = 0; it < opts_.max_iterations; ++it) {
      const Eigen::MatrixXcd grad = projected_gradient(factor);
      out.gradient_norm = grad.norm();
      out.iterations = it;
      if (out.gradient_norm < opts_.gradient_tolerance) {
        out.converged = true;
        break;
      }
      // Armijo backtracking along the projected gradient, followed by a
      // rescale back onto the shell.
      bool accepted = false;
      while (step > 1e-16) {
        const Eigen::MatrixXcd trial = to_shell(factor + step * grad);
        const double trial_value = objective(trial);
        const double resolvable = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(value));
        if (trial_value >= value + 1e-4 * step * out.gradient_norm * out.gradient_norm &&
            trial_value > value + resolvable) {
          factor = trial;
          value = trial_value;
          accepted = true;
          step = std::min(step * 2.0, 1e6);
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        // No ascent direction resolvable at double precision.
        out.converged = out.gradient_norm < 1e3 * opts_.gradient_tolerance;
        break;
      }
      out.iterations = it + 1;
    }
    out.factor = factor;
    out.value = value;
    return out;
  }

  Eigen::MatrixXcd to_shell(const Eigen::MatrixXcd& factor) const {
    const double used = constraint_energy(factor);
    return factor * std::sqrt(constraint_.energy() / used);
  }

  double objective(const Eigen::MatrixXcd& factor) const {
    const GaugeState state(HermitianMatrix(hermitian_part(Eigen::MatrixXcd(factor * factor.adjoint()))));
    return entropy_reduction_gauge(state, meas_, base_);
  }

 private:
  double constraint_energy(const Eigen::MatrixXcd& factor) const {
    return real_inner(factor, constraint_.epsilon().matrix() * factor);
  }

  Eigen::MatrixXcd projected_gradient(const Eigen::MatrixXcd& factor) const {
    const Index s = factor.rows();
    const Eigen::MatrixXcd lambda = factor * factor.adjoint();
    const double h = 1e-6 * (1.0 + lambda.cwiseAbs().maxCoeff());
    Eigen::MatrixXcd grad(s, s);
    const std::complex<double> unit[2] = {{1.0, 0.0}, {0.0, 1.0}};
    for (Index i = 0; i < s; ++i) {
      for (Index j = 0; j < s; ++j) {
        double parts[2];
        for (int p = 0; p < 2; ++p) {
          Eigen::MatrixXcd up = factor;
          Eigen::MatrixXcd down = factor;
          up(i, j) += h * unit[p];
          down(i, j) -= h * unit[p];
          parts[p] = (objective(up) - objective(down)) / (2.0 * h);
        }
        grad(i, j) = {parts[0], parts[1]};
      }
    }
    // Remove the component along the constraint normal 2 epsilon C.
    const Eigen::MatrixXcd normal = 2.0 * constraint_.epsilon().matrix() * factor;
    const double nn = real_inner(normal, normal);
    if (nn > 0.0) grad -= (real_inner(normal, grad) / nn) * normal;
    return grad;
  }

  const GaugeMeasurement& meas_;
  const EnergyConstraint& constraint_;
  LogBase base_;
  OptimizerSettings opts_;
};

}  // namespace

EnergyConstraint::EnergyConstraint(HermitianMatrix epsilon, double energy)
    : epsilon_(std::move(epsilon)), energy_(energy) {
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    std::ostringstream msg;
    msg << "energy budget must be positive, got " << energy;
    throw Error(ErrorKind::InfeasibleConstraint, msg.str());
  }
  if (epsilon_.dim() == 0 || epsilon_.min_eigenvalue() <= 1e-12) {
    throw Error(ErrorKind::InvalidRange, "epsilon must be positive definite");
  }
}

double EnergyConstraint::energy_of(const HermitianMatrix& lambda) const {
  if (lambda.dim() != modes()) throw Error(ErrorKind::DimensionMismatch, "Lambda and epsilon sizes differ");
  return (epsilon_.matrix() * lambda.matrix()).trace().real();
}

double cea_one_mode(double energy, double noise, LogBase base) {
  require_one_mode_args(energy, noise);
  return g_scalar(energy, base) - g_scalar(noise * energy / (noise + energy + 1.0), base);
}

double c_unassisted_one_mode(double energy, double noise, LogBase base) {
  require_one_mode_args(energy, noise);
  return std::log1p(energy / (noise + 1.0)) / log_of_base(base);
}

double gain(double energy, double noise, LogBase base) {
  const double c = c_unassisted_one_mode(energy, noise, base);
  if (c < 1e-300) throw Error(ErrorKind::DivisionDegenerate, "unassisted capacity underflows");
  return cea_one_mode(energy, noise, base) / c;
}

double excess_limit(double noise, LogBase base) {
  if (!(noise > 0.0) || !std::isfinite(noise)) throw Error(ErrorKind::InvalidRange, "need N > 0");
  return (1.0 - noise * std::log1p(1.0 / noise)) / log_of_base(base);
}

CapacityReport cea_multimode(const GaugeMeasurement& meas, const EnergyConstraint& constraint, LogBase base,
                             const OptimizerSettings& opts) {
  const Index s = meas.modes();
  if (constraint.modes() != s) {
    throw Error(ErrorKind::DimensionMismatch, "noise and epsilon sizes differ");
  }
  const unsigned starts = std::max(1u, opts.starts);
  const ShellAscent ascent(meas, constraint, base, opts);

  std::vector<RunResult> runs(starts);
  parallel_for(starts, [&](std::size_t k) {
    Eigen::MatrixXcd factor;
    if (k == 0) {
      factor = Eigen::MatrixXcd::Identity(s, s);
    } else {
      std::mt19937_64 rng(opts.seed * 1000003ULL + k);
      std::normal_distribution<double> normal;
      factor.resize(s, s);
      for (Index i = 0; i < s; ++i)
        for (Index j = 0; j < s; ++j) factor(i, j) = {normal(rng), normal(rng)};
    }
    runs[k] = ascent.run(factor);
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < runs.size(); ++k) {
    if (runs[k].value > runs[best].value) best = k;
  }
  const RunResult& win = runs[best];
  const Eigen::MatrixXcd lambda = win.factor * win.factor.adjoint();

  CapacityReport report{
      .cea = win.value,
      .c_unassisted = std::nullopt,
      .gain = std::nullopt,
      .optimizer_lambda = GaugeState(HermitianMatrix(hermitian_part(lambda))),
      .energy_used = 0.0,
      .base = base,
      .diagnostics = {},
  };
  report.energy_used = constraint.energy_of(report.optimizer_lambda.correlation());
  report.diagnostics.converged = win.converged;
  report.diagnostics.iterations = win.iterations;
  report.diagnostics.gradient_norm = win.gradient_norm;
  report.diagnostics.best_start = static_cast<unsigned>(best);
  for (const auto& r : runs) report.diagnostics.start_values.push_back(r.value);

  if (s == 1) {
    const double photons = report.optimizer_lambda.correlation().matrix()(0, 0).real();
    const double noise = meas.noise().matrix()(0, 0).real();
    report.c_unassisted = c_unassisted_one_mode(photons, noise, base);
    report.gain = gain(photons, noise, base);
  }
  return report;
}

std::vector<SweepRow> sweep_one_mode(std::vector<double> noise_values, std::vector<double> energy_grid,
                                     LogBase base) {
  if (noise_values.empty() || energy_grid.empty()) {
    throw Error(ErrorKind::InvalidRange, "sweep grids must be nonempty");
  }
  std::sort(noise_values.begin(), noise_values.end());
  std::sort(energy_grid.begin(), energy_grid.end());
  std::vector<SweepRow> rows;
  rows.reserve(noise_values.size() * energy_grid.size());
  for (double n : noise_values) {
    for (double e : energy_grid) {
      rows.push_back({n, e, cea_one_mode(e, n, base), c_unassisted_one_mode(e, n, base), gain(e, n, base)});
    }
  }
  return rows;
}

std::vector<double> log_spaced(double min, double max, std::size_t count) {
  if (count == 0 || !(min > 0.0) || !(max >= min)) {
    throw Error(ErrorKind::InvalidRange, "log grid needs count >= 1 and 0 < min <= max");
  }
  if (count == 1) return {min};
  std::vector<double> out(count);
  const double lo = std::log(min);
  const double hi = std::log(max);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = min;
  out.back() = max;
  return out;
}

std::vector<double> linear_spaced(double min, double max, std::size_t count) {
  if (count == 0 || !(max >= min)) throw Error(ErrorKind::InvalidRange, "linear grid needs count >= 1, min <= max");
  if (count == 1) return {min};
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return out;
}

}  // namespace gaussmeter
