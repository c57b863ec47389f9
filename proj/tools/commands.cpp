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

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "cli.hpp"
#include "gaussmeter/gauge.hpp"
#include "gaussmeter/symplectic.hpp"

namespace gaussmeter::cli {

namespace {

using nlohmann::json;

json complex_json(const Eigen::MatrixXcd& m) {
  json re = json::array();
  json im = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  return {{"re", re}, {"im", im}};
}

json real_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

json vector_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

std::string emit(const json& doc) { return doc.dump(2) + "\n"; }

CommandResult guarded(const std::function<CommandResult()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::NonConvergence ? kNonConvergence : kValidation;
    return {code, "", std::string("error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kValidation, "", std::string("error: ") + e.what() + "\n"};
  }
}

Eigen::MatrixXd real_covariance_input(const std::string& path) {
  const MatrixFile file = read_matrix_file(path, 2);
  if (file.value.imag().cwiseAbs().maxCoeff() > 0.0) {
    throw Error(ErrorKind::ParseError, path + ": covariance entries must be real");
  }
  return file.value.real();
}

HermitianMatrix hermitian_input(const std::string& path) {
  const MatrixFile file = read_matrix_file(path, 1);
  try {
    return HermitianMatrix(file.value);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.detail());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidRange, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::InvalidRange, "failed writing " + path);
}

}  // namespace

CommandResult cmd_er_gauge(const std::string& lambda_path, const std::string& noise_path, LogBase base) {
  return guarded([&] {
    const GaugeState state{hermitian_input(lambda_path)};
    const GaugeMeasurement meas{hermitian_input(noise_path)};
    if (state.modes() != meas.modes()) throw Error(ErrorKind::DimensionMismatch, "Lambda and N mode counts differ");
    const GaugePosterior post = posterior_params(state, meas);
    const json doc = {{"schema", "1"},
                      {"er", entropy_reduction_gauge(state, meas, base)},
                      {"ntilde", complex_json(post.Ntilde.matrix())},
                      {"k", complex_json(post.K)},
                      {"base", base_name(base)}};
    return CommandResult{kOk, emit(doc), ""};
  });
}

CommandResult cmd_er_general(const std::string& alpha_path, const std::string& beta_path, LogBase base) {
  return guarded([&] {
    const RealCovariance alpha(real_covariance_input(alpha_path));
    const RealCovariance beta(real_covariance_input(beta_path));
    if (alpha.modes() != beta.modes()) throw Error(ErrorKind::DimensionMismatch, "alpha and beta mode counts differ");
    const RealCovariance tilde = posterior_covariance(alpha, beta);
    const json doc = {{"schema", "1"},
                      {"er", entropy_reduction_general(alpha, GeneralMeasurement(beta), base)},
                      {"alpha_tilde", real_json(tilde.matrix())},
                      {"symplectic_spectra",
                       {{"alpha", vector_json(alpha.symplectic_eigenvalues())},
                        {"beta", vector_json(beta.symplectic_eigenvalues())},
                        {"alpha_tilde", vector_json(tilde.symplectic_eigenvalues())}}},
                      {"base", base_name(base)}};
    return CommandResult{kOk, emit(doc), ""};
  });
}

CommandResult cmd_capacity(const std::string& noise_path, const std::string& epsilon_path, double energy,
                           std::uint64_t seed, LogBase base, unsigned max_iterations) {
  return guarded([&] {
    const MatrixFile noise = read_matrix_file(noise_path, 1);
    const MatrixFile epsilon = read_matrix_file(epsilon_path, 1);
    if (noise.modes != epsilon.modes) throw Error(ErrorKind::DimensionMismatch, "N and epsilon mode counts differ");
    const EnergyConstraint constraint(HermitianMatrix(epsilon.value), energy);
    OptimizerSettings opts;
    opts.seed = seed;
    opts.max_iterations = max_iterations;
    const CapacityReport report =
        cea_multimode(GaugeMeasurement(HermitianMatrix(noise.value)), constraint, base, opts);
    const OptimizerDiagnostics& d = report.diagnostics;
    json doc = {{"schema", "1"},
                {"cea", report.cea},
                {"c_unassisted", report.c_unassisted ? json(*report.c_unassisted) : json(nullptr)},
                {"gain", report.gain ? json(*report.gain) : json(nullptr)},
                {"lambda_star", complex_json(report.optimizer_lambda.correlation().matrix())},
                {"energy", energy},
                {"energy_used", report.energy_used},
                {"base", base_name(base)},
                {"seed", seed},
                {"diagnostics",
                 {{"converged", d.converged},
                  {"iterations", d.iterations},
                  {"gradient_norm", d.gradient_norm},
                  {"best_start", d.best_start},
                  {"start_values", d.start_values}}}};
    if (!d.converged) {
      std::ostringstream msg;
      msg << "error: NonConvergence: projected gradient norm " << d.gradient_norm << " after " << d.iterations
          << " iterations; best value reported\n";
      return CommandResult{kNonConvergence, emit(doc), msg.str()};
    }
    return CommandResult{kOk, emit(doc), ""};
  });
}

CommandResult cmd_sweep(const std::string& spec_path, const std::string& csv_path,
                        const std::optional<std::string>& svg_path) {
  return guarded([&] {
    const SweepSpec spec = parse_sweep_spec(read_text_file(spec_path));
    const std::vector<SweepRow> rows = sweep_one_mode(spec.noise, spec.energies(), spec.base);
    write_file(csv_path, format_sweep_csv(rows));
    json doc = {{"schema", "1"}, {"rows", rows.size()}, {"csv", csv_path}, {"base", base_name(spec.base)}};
    if (svg_path) {
      write_file(*svg_path, render_sweep_svg(rows, spec.base));
      doc["svg"] = *svg_path;
    }
    return CommandResult{kOk, emit(doc), ""};
  });
}

CommandResult cmd_verify(const std::string& which, std::uint64_t seed) {
  return guarded([&] {
    const std::vector<CheckResult> results = run_verification(which, seed);
    json checks = json::array();
    bool all = true;
    for (const CheckResult& r : results) {
      all = all && r.passed;
      checks.push_back({{"name", r.name},
                        {"passed", r.passed},
                        {"worst", r.worst},
                        {"tolerance", r.tolerance},
                        {"trials", r.trials}});
    }
    const json doc = {{"schema", "1"}, {"case", which}, {"seed", seed}, {"checks", checks}, {"passed", all}};
    std::string err;
    if (!all) {
      for (const CheckResult& r : results)
        if (!r.passed) err += "FAIL " + r.name + "\n";
    }
    return CommandResult{all ? kOk : kVerificationFailure, emit(doc), err};
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropy reduction and entanglement-assisted capacity of Gaussian measurement channels", "gaussmeter"};
  app.require_subcommand(1);
  const std::vector<std::string> bases{"bits", "nats"};

  std::string lambda_path, noise_path, alpha_path, beta_path, epsilon_path, spec_path, csv_path, svg_path, which = "all";
  std::string base = "bits";
  double energy = 0.0;
  std::uint64_t seed = 0;
  unsigned max_iterations = 10000;

  CLI::App* er_gauge = app.add_subcommand("er-gauge", "entropy reduction of a gauge-covariant measurement");
  er_gauge->add_option("--lambda", lambda_path, "state correlation matrix file")->required();
  er_gauge->add_option("--noise", noise_path, "measurement noise matrix file")->required();
  er_gauge->add_option("--base", base)->check(CLI::IsMember(bases));

  CLI::App* er_general = app.add_subcommand("er-general", "entropy reduction of a general Gaussian measurement");
  er_general->add_option("--alpha", alpha_path, "state covariance file")->required();
  er_general->add_option("--beta", beta_path, "measurement noise covariance file")->required();
  er_general->add_option("--base", base)->check(CLI::IsMember(bases));

  CLI::App* capacity = app.add_subcommand("capacity", "energy-constrained entanglement-assisted capacity");
  capacity->add_option("--noise", noise_path, "measurement noise matrix file")->required();
  capacity->add_option("--epsilon", epsilon_path, "oscillator energy matrix file")->required();
  capacity->add_option("--energy", energy, "energy budget")->required();
  capacity->add_option("--seed", seed, "optimizer multistart seed");
  capacity->add_option("--max-iterations", max_iterations, "iteration cap per start")->check(CLI::PositiveNumber);
  capacity->add_option("--base", base)->check(CLI::IsMember(bases));

  CLI::App* sweep = app.add_subcommand("sweep", "one-mode capacity and gain table");
  sweep->add_option("--spec", spec_path, "sweep specification file")->required();
  sweep->add_option("--out", csv_path, "CSV output path")->required();
  sweep->add_option("--svg", svg_path, "optional SVG plot path");

  CLI::App* verify = app.add_subcommand("verify", "cross-check closed forms against the Fock oracle");
  verify->add_option("--case", which)->check(CLI::IsMember({"lemma1", "theorem2", "prop1", "cp", "correspondence", "all"}));
  verify->add_option("--seed", seed, "random draw seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  CommandResult result;
  if (*er_gauge) {
    result = cmd_er_gauge(lambda_path, noise_path, parse_base(base));
  } else if (*er_general) {
    result = cmd_er_general(alpha_path, beta_path, parse_base(base));
  } else if (*capacity) {
    result = cmd_capacity(noise_path, epsilon_path, energy, seed, parse_base(base), max_iterations);
  } else if (*sweep) {
    result = cmd_sweep(spec_path, csv_path, svg_path.empty() ? std::nullopt : std::optional<std::string>(svg_path));
  } else {
    result = cmd_verify(which, seed);
  }
  out << result.out;
  err << result.err;
  return result.exit_code;
}

}  // namespace gaussmeter::cli
