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

#include "gaussmeter/fockoracle.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "gaussmeter/parallel.hpp"

namespace gaussmeter::fock {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNegligibleDensity = 1e-14;
constexpr double kEigenFloor = 1e-14;

int ipow(int base, int exp) {
  int out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void require_single_mode(const FockOperator& rho, const char* op) {
  if (rho.modes() != 1) {
    std::ostringstream msg;
    msg << op << " supports one mode only";
    throw Error(ErrorKind::Unsupported, msg.str());
  }
}

// sqrt(p_n) for the thermal distribution, n < levels.
Eigen::VectorXd sqrt_thermal_weights(double mean, int levels) {
  Eigen::VectorXd w(levels);
  if (mean <= 0.0) {
    w.setZero();
    w(0) = 1.0;
    return w;
  }
  const double log_ratio = std::log(mean / (mean + 1.0));
  const double log_norm = std::log1p(mean);
  for (int n = 0; n < levels; ++n) w(n) = std::exp(0.5 * (n * log_ratio - log_norm));
  return w;
}

Eigen::MatrixXcd psd_root(const Eigen::MatrixXcd& rho) {
  return spectral_apply(rho, [](double v) { return std::sqrt(std::max(v, 0.0)); });
}

// W W^dagger or W^dagger W, whichever is smaller; both share the nonzero spectrum.
Eigen::MatrixXcd gram(const Eigen::MatrixXcd& w) {
  return w.rows() <= w.cols() ? Eigen::MatrixXcd(w * w.adjoint()) : Eigen::MatrixXcd(w.adjoint() * w);
}

// Entropy of G / Tr G from the eigenvalues of the Hermitian PSD matrix G.
double normalized_entropy(const Eigen::MatrixXcd& g, double trace, LogBase base) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(g), Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (double v : es.eigenvalues()) {
    const double lam = v / trace;
    if (lam > kEigenFloor) h -= lam * std::log(lam);
  }
  return h / log_of_base(base);
}

// V(z) = sqrt(rho_N) D(z)^dagger restricted to noise_cutoff(N) x cols.
Eigen::MatrixXcd measurement_operator(double noise, Complex z, int cols) {
  const int rows = noise_cutoff(noise);
  return sqrt_thermal_weights(noise, rows).asDiagonal() * displacement_elements(-z, rows, cols);
}

}  // namespace

FockOperator::FockOperator(Eigen::MatrixXcd matrix, int cutoff, int modes)
    : matrix_(std::move(matrix)), cutoff_(cutoff), modes_(modes) {
  if (cutoff < 1 || modes < 1) throw Error(ErrorKind::InvalidRange, "cutoff and modes must be positive");
  const Index expected = ipow(cutoff, modes);
  if (matrix_.rows() != expected || matrix_.cols() != expected) {
    std::ostringstream msg;
    msg << "operator must be " << expected << " x " << expected << " for cutoff " << cutoff << " and " << modes
        << " modes";
    throw Error(ErrorKind::DimensionMismatch, msg.str());
  }
  if (!matrix_.allFinite()) throw Error(ErrorKind::InvalidRange, "operator has non-finite entries");
}

void require_density(const FockOperator& rho) {
  const Eigen::MatrixXcd& m = rho.matrix();
  if (hermiticity_deviation(m) > 1e-9) throw Error(ErrorKind::NotHermitian, "density operator");
  if (std::abs(rho.trace() - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "density operator trace " << rho.trace() << " differs from 1 by more than 1e-6";
    throw Error(ErrorKind::TruncationTooSmall, msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw Error(ErrorKind::NegativeEigenvalue, "density operator is not positive");
  }
}

Eigen::MatrixXcd annihilation(int cutoff) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::MatrixXcd annihilation(int cutoff, int modes, int mode) {
  if (mode < 0 || mode >= modes) throw Error(ErrorKind::InvalidRange, "mode index out of range");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int j = 0; j < modes; ++j) {
    const Eigen::MatrixXcd factor = j == mode ? annihilation(cutoff) : Eigen::MatrixXcd::Identity(cutoff, cutoff);
    out = Eigen::kroneckerProduct(out, factor).eval();
  }
  return out;
}

int thermal_cutoff(double mean, double tail) {
  if (!(mean >= 0.0)) throw Error(ErrorKind::InvalidRange, "mean photon number must be nonnegative");
  if (mean == 0.0) return 2;
  const double d = std::ceil(std::log(tail) / std::log(mean / (mean + 1.0)));
  return std::max(2, static_cast<int>(d));
}

FockOperator thermal_state(double mean, int d) {
  if (d < 2) throw Error(ErrorKind::InvalidRange, "thermal state needs d >= 2");
  if (!(mean >= 0.0)) throw Error(ErrorKind::InvalidRange, "mean photon number must be nonnegative");
  const double tail = mean == 0.0 ? 0.0 : std::pow(mean / (mean + 1.0), d);
  if (tail > 1e-8) {
    std::ostringstream msg;
    msg << "thermal tail mass " << tail << " beyond d = " << d << " exceeds 1e-8";
    throw Error(ErrorKind::TruncationTooSmall, msg.str());
  }
  const Eigen::VectorXd w = sqrt_thermal_weights(mean, d);
  return FockOperator(w.cwiseAbs2().cast<Complex>().asDiagonal().toDenseMatrix(), d);
}

FockOperator coherent_state(Complex z, int d) {
  Eigen::VectorXcd psi = displacement_elements(z, d, 1).col(0);
  const double leak = 1.0 - psi.squaredNorm();
  if (leak > 1e-8) {
    std::ostringstream msg;
    msg << "coherent state leaks " << leak << " beyond d = " << d;
    throw Error(ErrorKind::TruncationTooSmall, msg.str());
  }
  return pure_state(psi, d);
}

FockOperator pure_state(const Eigen::VectorXcd& psi, int cutoff, int modes) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::InvalidRange, "state vector is zero");
  const Eigen::VectorXcd unit = psi / norm;
  return FockOperator(unit * unit.adjoint(), cutoff, modes);
}

FockOperator tensor_product(const FockOperator& first, const FockOperator& second) {
  if (first.modes() != 1 || second.modes() != 1 || first.cutoff() != second.cutoff()) {
    throw Error(ErrorKind::DimensionMismatch, "tensor_product takes two one-mode operators with equal cutoff");
  }
  return FockOperator(Eigen::kroneckerProduct(first.matrix(), second.matrix()).eval(), first.cutoff(), 2);
}

Displacement displacement(Complex z, int d) {
  if (d < 1) throw Error(ErrorKind::InvalidRange, "cutoff must be positive");
  const double amp = std::abs(z);
  const int work = d + static_cast<int>(std::ceil(amp * amp + 10.0 * amp + 30.0));
  const Eigen::MatrixXcd a = annihilation(work);
  const Eigen::MatrixXcd generator = z * a.adjoint() - std::conj(z) * a;

  Displacement out;
  out.matrix = generator.exp().topLeftCorner(d, d);
  out.large_amplitude = amp * amp > d / 4.0;
  const int kept = (d + 3) / 4;
  const Eigen::MatrixXcd gram = out.matrix.leftCols(kept).adjoint() * out.matrix.leftCols(kept);
  out.unitarity_deviation = (gram - Eigen::MatrixXcd::Identity(kept, kept)).cwiseAbs().maxCoeff();
  if (out.unitarity_deviation > 1e-6) {
    std::ostringstream msg;
    msg << "displacement by |z| = " << amp << " leaks " << out.unitarity_deviation << " out of d = " << d;
    throw Error(ErrorKind::TruncationTooSmall, msg.str());
  }
  return out;
}

Eigen::MatrixXcd displacement_elements(Complex z, int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorKind::InvalidRange, "block size must be positive");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rows, cols);
  const double x = std::norm(z);
  if (x == 0.0) {
    for (int i = 0; i < std::min(rows, cols); ++i) out(i, i) = 1.0;
    return out;
  }
  const double log_x = std::log(x);
  const Complex below = z / std::abs(z);          // phase for m >= n
  const Complex above = -std::conj(z) / std::abs(z);  // phase for m < n
  const int kmax = std::max(rows, cols);
  Complex below_pow = 1.0;
  Complex above_pow = 1.0;
  std::vector<double> lag;
  for (int k = 0; k < kmax; ++k) {
    // <lo + k|D|lo> = sqrt(lo!/(lo+k)!) z^k e^{-x/2} L_lo^{(k)}(x), and the
    // transposed element carries (-conj z)^k instead of z^k.
    const int lo_below = std::min(rows - k, cols);
    const int lo_above = k == 0 ? 0 : std::min(cols - k, rows);
    const int lo_max = std::max(lo_below, lo_above);
    if (lo_max > 0) {
      lag.assign(lo_max, 0.0);
      lag[0] = 1.0;
      if (lo_max > 1) lag[1] = 1.0 + k - x;
      for (int j = 1; j + 1 < lo_max; ++j) {
        lag[j + 1] = ((2.0 * j + 1.0 + k - x) * lag[j] - (j + k) * lag[j - 1]) / (j + 1.0);
      }
      for (int lo = 0; lo < lo_max; ++lo) {
        if (lag[lo] == 0.0) continue;
        const double log_mag = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + k + 1.0)) + 0.5 * k * log_x - 0.5 * x +
                               std::log(std::abs(lag[lo]));
        const double mag = std::copysign(std::exp(log_mag), lag[lo]);
        if (lo < lo_below) out(lo + k, lo) = mag * below_pow;
        if (k > 0 && lo < lo_above) out(lo, lo + k) = mag * above_pow;
      }
    }
    below_pow *= below;
    above_pow *= above;
  }
  return out;
}

int noise_cutoff(double noise) {
  if (!(noise >= 0.0)) throw Error(ErrorKind::InvalidRange, "noise must be nonnegative");
  if (noise == 0.0) return 1;
  const double d = std::ceil(std::log(1e-12) / std::log(noise / (noise + 1.0)));
  if (d > 2000) throw Error(ErrorKind::Unsupported, "noise too large for the dense oracle");
  return std::max(1, static_cast<int>(d));
}

FockOperator povm_density(double noise, Complex z, int d) {
  const int src = thermal_cutoff(noise, 1e-14);
  const Eigen::MatrixXcd e = displacement_elements(z, d, src);
  const Eigen::VectorXd p = sqrt_thermal_weights(noise, src).cwiseAbs2();
  return FockOperator(e * p.cast<Complex>().asDiagonal() * e.adjoint(), d);
}

double output_probability(const FockOperator& rho, double noise, Complex z) {
  require_single_mode(rho, "output_probability");
  const FockOperator m = povm_density(noise, z, rho.cutoff());
  return (rho.matrix() * m.matrix()).trace().real();
}

Posterior posterior_state(const FockOperator& rho, double noise, Complex z) {
  require_single_mode(rho, "posterior_state");
  const Eigen::MatrixXcd v = measurement_operator(noise, z, rho.cutoff());
  const Eigen::MatrixXcd unnorm = v * rho.matrix() * v.adjoint();
  const double p = unnorm.trace().real();
  if (!(p > kNegligibleDensity)) {
    std::ostringstream msg;
    msg << "output density " << p << " at z = " << z;
    throw Error(ErrorKind::NegligibleOutcome, msg.str());
  }
  return Posterior{FockOperator(hermitian_part(Eigen::MatrixXcd(unnorm / p)), static_cast<int>(v.rows())), p};
}

Eigen::VectorXd posterior_spectrum_via_effect(const FockOperator& rho, double noise, Complex z) {
  require_single_mode(rho, "posterior_spectrum_via_effect");
  const Eigen::MatrixXcd root = psd_root(rho.matrix());
  const FockOperator m = povm_density(noise, z, rho.cutoff());
  const Eigen::MatrixXcd g = root * m.matrix() * root;
  const double p = g.trace().real();
  if (!(p > kNegligibleDensity)) throw Error(ErrorKind::NegligibleOutcome, "effect has negligible weight");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(g), Eigen::EigenvaluesOnly);
  return es.eigenvalues() / p;
}

OutcomeGrid trapezoid_grid(double radius, double step) {
  if (!(radius > 0.0) || !(step > 0.0)) throw Error(ErrorKind::InvalidRange, "grid radius and step must be positive");
  // Even number of intervals so that every other node forms the coarse grid.
  const int half = static_cast<int>(std::ceil(radius / step));
  const int intervals = 2 * half;
  const double h = 2.0 * radius / intervals;
  auto fine_w = [&](int i) { return (i == 0 || i == intervals) ? 0.5 * h : h; };
  auto coarse_w = [&](int i) {
    if (i % 2 != 0) return 0.0;
    return (i == 0 || i == intervals) ? h : 2.0 * h;
  };
  OutcomeGrid grid;
  grid.radius = radius;
  grid.step = h;
  const std::size_t n = static_cast<std::size_t>(intervals + 1);
  grid.points.reserve(n * n);
  grid.weights.reserve(n * n);
  grid.coarse_weights.reserve(n * n);
  for (int i = 0; i <= intervals; ++i) {
    for (int j = 0; j <= intervals; ++j) {
      grid.points.emplace_back(-radius + i * h, -radius + j * h);
      grid.weights.push_back(fine_w(i) * fine_w(j) / kPi);
      grid.coarse_weights.push_back(coarse_w(i) * coarse_w(j) / kPi);
    }
  }
  return grid;
}

OutcomeGrid default_grid(double lambda, double noise) {
  const double sigma = std::sqrt(lambda + noise + 1.0);
  return trapezoid_grid(5.0 * sigma, 0.15 * sigma);
}

ErEstimate er_numeric(const FockOperator& rho, double noise, const OutcomeGrid& grid, LogBase base,
                      double mass_tolerance) {
  require_single_mode(rho, "er_numeric");
  require_density(rho);
  const Eigen::MatrixXcd unit = rho.matrix() / rho.trace();
  const Eigen::MatrixXcd root = psd_root(unit);
  const int cols = rho.cutoff();
  const int rows = noise_cutoff(noise);
  const Eigen::VectorXd sqrt_p = sqrt_thermal_weights(noise, rows);

  const std::size_t n = grid.points.size();
  std::vector<double> density(n, 0.0);
  std::vector<double> weighted_entropy(n, 0.0);
  parallel_for(n, [&](std::size_t k) {
    const Eigen::MatrixXcd w = sqrt_p.asDiagonal() * displacement_elements(-grid.points[k], rows, cols) * root;
    const Eigen::MatrixXcd g = gram(w);
    const double p = g.trace().real();
    density[k] = p;
    if (p > kNegligibleDensity) weighted_entropy[k] = p * normalized_entropy(g, p, base);
  });

  std::vector<double> terms(n);
  auto integrate = [&](const std::vector<double>& weights, const std::vector<double>& values) {
    for (std::size_t k = 0; k < n; ++k) terms[k] = weights[k] * values[k];
    return compensated_sum(terms);
  };
  ErEstimate out;
  out.mass = integrate(grid.weights, density);
  if (std::abs(out.mass - 1.0) > mass_tolerance) {
    std::ostringstream msg;
    msg << "integrated output mass " << out.mass << " misses 1 by more than " << mass_tolerance;
    throw Error(ErrorKind::GridMassDeficit, msg.str());
  }
  const double fine = integrate(grid.weights, weighted_entropy);
  const double coarse = integrate(grid.coarse_weights, weighted_entropy);
  out.value = von_neumann_entropy(unit, base) - fine;
  out.error = std::abs(fine - coarse);
  return out;
}

ErEstimate er_numeric_mc(const FockOperator& rho, const HermitianMatrix& noise, std::size_t samples,
                         std::uint64_t seed, LogBase base, double mass_tolerance) {
  if (rho.modes() != 2 || noise.dim() != 2) throw Error(ErrorKind::Unsupported, "Monte Carlo oracle is two-mode");
  if (std::abs(noise.matrix()(0, 1)) > 1e-12) {
    throw Error(ErrorKind::Unsupported, "Monte Carlo oracle needs a diagonal noise matrix");
  }
  if (samples < 2) throw Error(ErrorKind::InvalidRange, "need at least two samples");
  require_density(rho);
  const Eigen::MatrixXcd unit = rho.matrix() / rho.trace();
  const FockOperator unit_op(unit, rho.cutoff(), 2);
  const Eigen::MatrixXcd root = psd_root(unit);
  const double n1 = std::max(0.0, noise.matrix()(0, 0).real());
  const double n2 = std::max(0.0, noise.matrix()(1, 1).real());
  const int cols = rho.cutoff();
  const int rows1 = noise_cutoff(n1);
  const int rows2 = noise_cutoff(n2);
  const Eigen::VectorXd sp1 = sqrt_thermal_weights(n1, rows1);
  const Eigen::VectorXd sp2 = sqrt_thermal_weights(n2, rows2);

  const Eigen::MatrixXcd sigma =
      normal_moment_matrix(unit_op).matrix() + noise.matrix() + Eigen::MatrixXcd::Identity(2, 2);
  const Eigen::LLT<Eigen::MatrixXcd> llt(sigma);
  const Eigen::MatrixXcd chol = llt.matrixL();
  const double det_sigma = std::norm(chol(0, 0)) * std::norm(chol(1, 1));

  // Draw all outcomes up front so results do not depend on evaluation order.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<Eigen::Vector2cd> outcomes(samples);
  std::vector<double> proposal(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    Eigen::Vector2cd w;
    for (int j = 0; j < 2; ++j) w(j) = Complex(normal(rng), normal(rng));
    outcomes[k] = chol * w;
    proposal[k] = std::exp(-w.squaredNorm()) / det_sigma;
  }

  std::vector<double> ratio(samples, 0.0);
  std::vector<double> weighted_entropy(samples, 0.0);
  parallel_for(samples, [&](std::size_t k) {
    const Eigen::MatrixXcd v1 = sp1.asDiagonal() * displacement_elements(-outcomes[k](0), rows1, cols);
    const Eigen::MatrixXcd v2 = sp2.asDiagonal() * displacement_elements(-outcomes[k](1), rows2, cols);
    const Eigen::MatrixXcd w = Eigen::kroneckerProduct(v1, v2).eval() * root;
    const Eigen::MatrixXcd g = gram(w);
    const double p = g.trace().real();
    ratio[k] = p / proposal[k];
    if (p > kNegligibleDensity) weighted_entropy[k] = ratio[k] * normalized_entropy(g, p, base);
  });

  const double count = static_cast<double>(samples);
  const double mean_h = compensated_sum(weighted_entropy) / count;
  std::vector<double> dev(samples);
  for (std::size_t k = 0; k < samples; ++k) dev[k] = (weighted_entropy[k] - mean_h) * (weighted_entropy[k] - mean_h);
  const double variance = compensated_sum(dev) / (count - 1.0);

  ErEstimate out;
  out.mass = compensated_sum(ratio) / count;
  if (std::abs(out.mass - 1.0) > mass_tolerance) {
    std::ostringstream msg;
    msg << "sampled output mass " << out.mass << " misses 1 by more than " << mass_tolerance;
    throw Error(ErrorKind::GridMassDeficit, msg.str());
  }
  out.value = von_neumann_entropy(unit, base) - mean_h;
  out.error = std::sqrt(variance / count);
  return out;
}

ErEstimate er_numeric_thermal(double lambda, double noise, int d, LogBase base) {
  const OutcomeGrid grid = default_grid(lambda, noise);
  ErEstimate at_d = er_numeric(thermal_state(lambda, d), noise, grid, base);
  const ErEstimate at_2d = er_numeric(thermal_state(lambda, 2 * d), noise, grid, base);
  const double drift = std::abs(at_d.value - at_2d.value);
  if (drift >= 1e-3) {
    std::ostringstream msg;
    msg << "entropy reduction moves by " << drift << " between d = " << d << " and " << 2 * d;
    throw Error(ErrorKind::TruncationTooSmall, msg.str());
  }
  at_d.error = std::max(at_d.error, drift);
  return at_d;
}

NormalMoments normal_moments(const FockOperator& rho) {
  require_single_mode(rho, "normal_moments");
  require_density(rho);
  const Eigen::MatrixXcd a = annihilation(rho.cutoff());
  NormalMoments out;
  out.first = (rho.matrix() * a).trace();
  out.lambda = (a * rho.matrix() * a.adjoint()).trace().real();
  out.anomalous = (rho.matrix() * a * a).trace();
  return out;
}

HermitianMatrix normal_moment_matrix(const FockOperator& rho) {
  const int s = rho.modes();
  std::vector<Eigen::MatrixXcd> ops;
  for (int j = 0; j < s; ++j) ops.push_back(annihilation(rho.cutoff(), s, j));
  Eigen::MatrixXcd lambda(s, s);
  for (int j = 0; j < s; ++j)
    for (int k = 0; k < s; ++k) lambda(j, k) = (ops[j] * rho.matrix() * ops[k].adjoint()).trace();
  return HermitianMatrix(lambda);
}

FockOperator gauge_average(const FockOperator& rho) {
  const int d = rho.cutoff();
  const int s = rho.modes();
  std::vector<int> total(static_cast<std::size_t>(rho.dim()), 0);
  for (Index i = 0; i < rho.dim(); ++i) {
    Index rest = i;
    for (int j = 0; j < s; ++j) {
      total[i] += static_cast<int>(rest % d);
      rest /= d;
    }
  }
  Eigen::MatrixXcd out = rho.matrix();
  for (Index i = 0; i < rho.dim(); ++i)
    for (Index k = 0; k < rho.dim(); ++k)
      if (total[i] != total[k]) out(i, k) = 0.0;
  return FockOperator(out, d, s);
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho, LogBase base) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(rho), Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (double v : es.eigenvalues())
    if (v > kEigenFloor) h -= v * std::log(v);
  return h / log_of_base(base);
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "trace_distance");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(Eigen::MatrixXcd(a - b)), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Eigen::MatrixXcd displaced_thermal(double mean, Complex shift, int rows) {
  const int src = thermal_cutoff(mean, 1e-14);
  const Eigen::MatrixXcd e = displacement_elements(shift, rows, src);
  const Eigen::VectorXd p = sqrt_thermal_weights(mean, src).cwiseAbs2();
  return e * p.cast<Complex>().asDiagonal() * e.adjoint();
}

}  // namespace gaussmeter::fock
