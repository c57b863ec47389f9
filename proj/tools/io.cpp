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
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace gaussmeter::cli {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::ostringstream msg;
    msg << "line " << line << ", column " << column << ": malformed JSON";
    parse_fail(msg.str());
  }
}

double entry_value(const json& v, const char* key, Index row, Index col) {
  if (!v.is_number()) {
    std::ostringstream msg;
    msg << key << " row " << row + 1 << ", column " << col + 1 << ": expected a number";
    parse_fail(msg.str());
  }
  return v.get<double>();
}

Eigen::MatrixXd read_part(const json& part, const char* key, Index n) {
  if (!part.is_array()) parse_fail(std::string(key) + " must be an array");
  Eigen::MatrixXd out(n, n);
  const bool nested = !part.empty() && part.front().is_array();
  if (nested) {
    if (static_cast<Index>(part.size()) != n) {
      std::ostringstream msg;
      msg << key << " has " << part.size() << " rows, expected " << n;
      parse_fail(msg.str());
    }
    for (Index i = 0; i < n; ++i) {
      const json& row = part[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Index>(row.size()) != n) {
        std::ostringstream msg;
        msg << key << " row " << i + 1 << ": expected " << n << " columns";
        parse_fail(msg.str());
      }
      for (Index j = 0; j < n; ++j) out(i, j) = entry_value(row[static_cast<std::size_t>(j)], key, i, j);
    }
    return out;
  }
  if (static_cast<Index>(part.size()) != n * n) {
    std::ostringstream msg;
    msg << key << " has " << part.size() << " entries, expected " << n << " rows of " << n << " or " << n * n
        << " flat entries";
    parse_fail(msg.str());
  }
  for (Index k = 0; k < n * n; ++k) out(k / n, k % n) = entry_value(part[static_cast<std::size_t>(k)], key, k / n, k % n);
  return out;
}

std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

MatrixFile parse_matrix(const std::string& text, Index per_mode) {
  const json doc = parse_json(text);
  if (!doc.is_object()) parse_fail("line 1, column 1: matrix file must be a JSON object");
  if (!doc.contains("s") || !doc["s"].is_number_integer() || doc["s"].get<long long>() < 1) {
    parse_fail("\"s\" must be a positive integer");
  }
  if (!doc.contains("re")) parse_fail("missing \"re\"");
  MatrixFile out;
  out.modes = static_cast<Index>(doc["s"].get<long long>());
  const Index n = per_mode * out.modes;
  const Eigen::MatrixXd re = read_part(doc["re"], "re", n);
  const Eigen::MatrixXd im = doc.contains("im") ? read_part(doc["im"], "im", n) : Eigen::MatrixXd::Zero(n, n);
  out.value = re.cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * im.cast<std::complex<double>>();
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

MatrixFile read_matrix_file(const std::string& path, Index per_mode) {
  try {
    return parse_matrix(read_text_file(path), per_mode);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw Error(ErrorKind::ParseError, path + ": " + e.detail());
    throw;
  }
}

LogBase parse_base(const std::string& name) {
  if (name == "bits") return LogBase::Bits;
  if (name == "nats") return LogBase::Nats;
  throw Error(ErrorKind::InvalidRange, "base must be bits or nats, got " + name);
}

std::string base_name(LogBase base) { return base == LogBase::Bits ? "bits" : "nats"; }

std::vector<double> SweepSpec::energies() const {
  return scale == EnergyScale::Log ? log_spaced(energy_min, energy_max, count)
                                   : linear_spaced(energy_min, energy_max, count);
}

SweepSpec parse_sweep_spec(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) parse_fail("sweep spec must be a JSON object");
  SweepSpec spec;
  if (!doc.contains("N") || !doc["N"].is_array() || doc["N"].empty()) parse_fail("\"N\" must be a nonempty list");
  for (std::size_t i = 0; i < doc["N"].size(); ++i) {
    const json& v = doc["N"][i];
    if (!v.is_number()) parse_fail("N entry " + std::to_string(i + 1) + " is not a number");
    const double n = v.get<double>();
    if (!(n >= 0.0) || !std::isfinite(n)) throw Error(ErrorKind::InvalidRange, "noise values must be >= 0");
    spec.noise.push_back(n);
  }
  if (!doc.contains("E") || !doc["E"].is_object()) parse_fail("\"E\" must be an object");
  const json& e = doc["E"];
  for (const char* key : {"min", "max"}) {
    if (!e.contains(key) || !e[key].is_number()) parse_fail(std::string("E.") + key + " must be a number");
  }
  if (!e.contains("count") || !e["count"].is_number_integer()) parse_fail("E.count must be an integer");
  spec.energy_min = e["min"].get<double>();
  spec.energy_max = e["max"].get<double>();
  const long long count = e["count"].get<long long>();
  if (count < 1) throw Error(ErrorKind::InvalidRange, "E.count must be >= 1");
  spec.count = static_cast<std::size_t>(count);
  if (!(spec.energy_min > 0.0)) throw Error(ErrorKind::InvalidRange, "E.min must be > 0");
  if (!(spec.energy_max >= spec.energy_min)) throw Error(ErrorKind::InvalidRange, "E.max must be >= E.min");
  const std::string scale = e.value("scale", std::string("log"));
  if (scale == "log") {
    spec.scale = EnergyScale::Log;
  } else if (scale == "linear") {
    spec.scale = EnergyScale::Linear;
  } else {
    throw Error(ErrorKind::InvalidRange, "E.scale must be log or linear");
  }
  if (doc.contains("base")) {
    if (!doc["base"].is_string()) parse_fail("\"base\" must be a string");
    spec.base = parse_base(doc["base"].get<std::string>());
  }
  return spec;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "N,E,C_ea,C,G\n";
  for (const SweepRow& r : rows) {
    out += format_g12(r.noise) + ',' + format_g12(r.energy) + ',' + format_g12(r.cea) + ',' + format_g12(r.c) + ',' +
           format_g12(r.gain) + '\n';
  }
  return out;
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "N,E,C_ea,C,G") parse_fail("line 1: expected header N,E,C_ea,C,G");
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    double v[5];
    std::size_t start = 0;
    for (int k = 0; k < 5; ++k) {
      const std::size_t end = k < 4 ? line.find(',', start) : line.size();
      if (end == std::string::npos) {
        parse_fail("line " + std::to_string(line_no) + ", column " + std::to_string(k + 1) + ": missing field");
      }
      const std::string field = line.substr(start, end - start);
      char* stop = nullptr;
      v[k] = std::strtod(field.c_str(), &stop);
      if (field.empty() || *stop != '\0') {
        parse_fail("line " + std::to_string(line_no) + ", column " + std::to_string(k + 1) + ": not a number");
      }
      start = end + 1;
    }
    rows.push_back({v[0], v[1], v[2], v[3], v[4]});
  }
  return rows;
}

std::string render_sweep_svg(const std::vector<SweepRow>& rows, LogBase base) {
  constexpr double kPanelW = 420.0;
  constexpr double kPanelH = 300.0;
  constexpr double kMargin = 50.0;
  static const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::map<double, std::vector<const SweepRow*>> curves;
  double e_lo = HUGE_VAL, e_hi = -HUGE_VAL, c_hi = 0.0, g_lo = HUGE_VAL, g_hi = -HUGE_VAL;
  for (const SweepRow& r : rows) {
    curves[r.noise].push_back(&r);
    e_lo = std::min(e_lo, r.energy);
    e_hi = std::max(e_hi, r.energy);
    c_hi = std::max({c_hi, r.cea, r.c});
    g_lo = std::min(g_lo, r.gain);
    g_hi = std::max(g_hi, r.gain);
  }
  const double lx_lo = std::floor(std::log10(e_lo));
  const double lx_hi = std::max(lx_lo + 1.0, std::ceil(std::log10(e_hi)));
  g_lo = std::min(1.0, g_lo);
  if (!(g_hi > g_lo)) g_hi = g_lo + 1.0;
  if (!(c_hi > 0.0)) c_hi = 1.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * (kPanelW + kMargin) + kMargin << "\" height=\""
      << kPanelH + 2 * kMargin << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  auto panel = [&](int index, const char* title, double y_lo, double y_hi, auto value_of, bool with_c) {
    const double x0 = kMargin + index * (kPanelW + kMargin);
    const double y0 = kMargin;
    auto px = [&](double e) { return x0 + (std::log10(e) - lx_lo) / (lx_hi - lx_lo) * kPanelW; };
    auto py = [&](double v) { return y0 + kPanelH - (v - y_lo) / (y_hi - y_lo) * kPanelH; };
    svg << "<g>\n<text x=\"" << x0 << "\" y=\"" << y0 - 10 << "\">" << title << "</text>\n";
    svg << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << kPanelW << "\" height=\"" << kPanelH
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double d = lx_lo; d <= lx_hi + 1e-9; d += 1.0) {
      const double x = px(std::pow(10.0, d));
      svg << "<line x1=\"" << x << "\" y1=\"" << y0 + kPanelH << "\" x2=\"" << x << "\" y2=\"" << y0 + kPanelH + 5
          << "\" stroke=\"black\"/><text x=\"" << x - 10 << "\" y=\"" << y0 + kPanelH + 18 << "\">1e" << d
          << "</text>\n";
    }
    svg << "<text x=\"" << x0 - 45 << "\" y=\"" << py(y_hi) + 4 << "\">" << format_g12(y_hi) << "</text>\n";
    svg << "<text x=\"" << x0 - 45 << "\" y=\"" << py(y_lo) + 4 << "\">" << format_g12(y_lo) << "</text>\n";
    svg << "<text x=\"" << x0 + kPanelW / 2 << "\" y=\"" << y0 + kPanelH + 35 << "\">E</text>\n";
    std::size_t k = 0;
    for (const auto& [noise, pts] : curves) {
      const char* color = kColors[k % std::size(kColors)];
      for (int series = 0; series < (with_c ? 2 : 1); ++series) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\"" << (series == 1 ? " stroke-dasharray=\"2,3\"" : "")
            << " points=\"";
        for (const SweepRow* r : pts) svg << px(r->energy) << ',' << py(value_of(*r, series)) << ' ';
        svg << "\"/>\n";
      }
      svg << "<text x=\"" << x0 + 8 << "\" y=\"" << y0 + 16 + 14 * k << "\" fill=\"" << color << "\">N="
          << format_g12(noise) << "</text>\n";
      ++k;
    }
    svg << "</g>\n";
  };
  const std::string unit = base_name(base);
  panel(0, ("C_ea (solid), C (dotted) [" + unit + "]").c_str(), 0.0, c_hi,
        [](const SweepRow& r, int series) { return series == 0 ? r.cea : r.c; }, true);
  panel(1, "G = C_ea / C", g_lo, g_hi, [](const SweepRow& r, int) { return r.gain; }, false);
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace gaussmeter::cli
