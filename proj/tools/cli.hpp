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

// Command-line front end: matrix and sweep file formats, command handlers and
// the oracle verification suites. Handlers return their stdout text and exit
// code so they can be driven from tests without spawning a process.

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gaussmeter/capacity.hpp"
#include "gaussmeter/matfun.hpp"

namespace gaussmeter::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kNonConvergence = 3, kVerificationFailure = 4 };

/// Contents of a matrix file: {"s": modes, "re": [...], "im": [...]}.
struct MatrixFile {
  Index modes = 0;
  Eigen::MatrixXcd value;
};

/// Parses a matrix document whose side is `per_mode` * s (1 for complex
/// correlation matrices, 2 for real covariances). "re" and "im" may be nested
/// rows or a flat row-major list. Throws Error(ParseError) with line/column or
/// row/column position.
MatrixFile parse_matrix(const std::string& text, Index per_mode);
MatrixFile read_matrix_file(const std::string& path, Index per_mode);

std::string read_text_file(const std::string& path);

enum class EnergyScale { Log, Linear };

struct SweepSpec {
  std::vector<double> noise;
  double energy_min = 0.0;
  double energy_max = 0.0;
  std::size_t count = 0;
  EnergyScale scale = EnergyScale::Log;
  LogBase base = LogBase::Bits;

  std::vector<double> energies() const;
};

/// {"N": [...], "E": {"min", "max", "count", "scale": "log"|"linear"}, "base": "bits"|"nats"}
SweepSpec parse_sweep_spec(const std::string& text);

/// Header N,E,C_ea,C,G; 12 significant digits; LF line endings.
std::string format_sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

/// Two panels over a log energy axis: capacities (C_ea solid, C dotted) and gain.
std::string render_sweep_svg(const std::vector<SweepRow>& rows, LogBase base);

LogBase parse_base(const std::string& name);
std::string base_name(LogBase base);

struct CommandResult {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

CommandResult cmd_er_gauge(const std::string& lambda_path, const std::string& noise_path, LogBase base);
CommandResult cmd_er_general(const std::string& alpha_path, const std::string& beta_path, LogBase base);
CommandResult cmd_capacity(const std::string& noise_path, const std::string& epsilon_path, double energy,
                           std::uint64_t seed, LogBase base = LogBase::Bits, unsigned max_iterations = 10000);
CommandResult cmd_sweep(const std::string& spec_path, const std::string& csv_path,
                        const std::optional<std::string>& svg_path);
CommandResult cmd_verify(const std::string& which, std::uint64_t seed);

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest violation measure seen
  double tolerance = 0.0;  // bound that `worst` is held to
  std::size_t trials = 0;
};

std::vector<std::string> verification_cases();
/// Runs one suite; unknown names throw Error(InvalidRange).
std::vector<CheckResult> run_verification(const std::string& which, std::uint64_t seed);

/// Parses argv and dispatches. Writes command output to `out` and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gaussmeter::cli
