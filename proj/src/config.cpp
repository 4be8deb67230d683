/*
 * Copyright 2026 The nlcasimir Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "nlcasimir/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nlcasimir::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
  if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw InvalidInput(key + ": not a number: '" + v + "'");
  }
  if (pos != v.size() || std::isnan(x)) throw InvalidInput(key + ": not a number: '" + v + "'");
  return x;
}

long long parse_integer(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw InvalidInput(key + ": not an integer: '" + v + "'");
  }
  if (pos != v.size()) throw InvalidInput(key + ": not an integer: '" + v + "'");
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split(v, ',')) out.push_back(parse_real(key, item));
  if (out.empty()) throw InvalidInput(key + ": empty list");
  return out;
}

// "xi:eps, xi:eps, ..." with xi in rad/s.
Permittivity parse_table(const std::string& key, const std::string& v) {
  std::vector<std::pair<double, double>> table;
  for (const auto& item : split(v, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InvalidInput(key + ": expected xi:eps pairs");
    table.emplace_back(parse_real(key, trim(item.substr(0, colon))), parse_real(key, trim(item.substr(colon + 1))));
  }
  return Permittivity::tabulated(std::move(table));
}

Permittivity permittivity(const Settings& s, const std::string& value_key, const std::string& table_key) {
  const std::string& table = s.at(table_key);
  if (!table.empty()) return parse_table(table_key, table);
  return Permittivity::from_value(parse_real(value_key, s.at(value_key)));
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& known_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"eps_nl", "1"},
      {"eps_lin", "inf"},
      {"eps_nl_table", ""},
      {"eps_lin_table", ""},
      {"chi3", "0"},
      {"regime", "zero"},
      {"temperature", "300"},
      {"distance", "1e-8"},
      {"d_min", "1e-9"},
      {"d_max", "1e-6"},
      {"d_count", "31"},
      {"eps_nl_list", "1,2,5,10,100"},
      {"eps_lin_list", "2,10,inf"},
      {"tol", "1e-6"},
      {"method", "factorized"},
      {"polynomial", "contraction"},
      {"out", "-"},
      {"seed", "20260416"},
      {"threads", "1"},
      {"lab_points", "32"},
      {"lab_spacing", "1e-8"},
      {"lab_omega", "7.5e15"},
      {"lab_eta_rel", "1e-3"},
      {"lab_eps_alpha", "2"},
      {"lab_eps_beta", "3"},
      {"lab_chi_strength", "2.5e-3"},
      {"lab_b", "1"},
      {"lab_samples", "16000"},
  };
  return keys;
}

Settings parse_config_text(const std::string& text) {
  Settings out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidInput("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    bool known = false;
    for (const auto& [k, unused] : known_keys()) known = known || k == key;
    if (!known) throw InvalidInput("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (out.count(key)) throw InvalidInput("line " + std::to_string(lineno) + ": repeated key '" + key + "'");
    out[key] = value;
  }
  return out;
}

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

LayerStack RunConfig::stack() const { return LayerStack(nonlinear_plate, linear_plate, distance, temperature); }

LayerStack RunConfig::stack_at(double d) const { return stack().with_gap(d); }

std::vector<double> RunConfig::distance_grid() const {
  std::vector<double> g(static_cast<std::size_t>(d_count));
  if (d_count == 1) {
    g[0] = d_min;
    return g;
  }
  const double a = std::log(d_min), b = std::log(d_max);
  for (int i = 0; i < d_count; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (d_count - 1));
  g.back() = d_max;
  return g;
}

RunConfig resolve_config(const std::string& subcommand, const Settings& file, const Settings& overrides) {
  Settings s;
  for (const auto& [k, v] : known_keys()) s[k] = v;
  for (const Settings* layer : {&file, &overrides}) {
    for (const auto& [k, v] : *layer) {
      if (!s.count(k)) throw InvalidInput("unknown key '" + k + "'");
      s[k] = v;
    }
  }

  RunConfig c;
  c.subcommand = subcommand;
  c.resolved = s;
  c.resolved["subcommand"] = subcommand;

  c.nonlinear_plate = {permittivity(s, "eps_nl", "eps_nl_table"), parse_real("chi3", s.at("chi3"))};
  c.linear_plate = {permittivity(s, "eps_lin", "eps_lin_table"), 0.0};
  if (!std::isfinite(c.nonlinear_plate.chi3)) throw InvalidInput("chi3 must be finite");

  const std::string& regime = s.at("regime");
  const double kelvin = parse_real("temperature", s.at("temperature"));
  if (regime == "zero") {
    c.temperature = Temperature::zero();
  } else if (regime == "finite") {
    c.temperature = Temperature::finite(kelvin);
  } else if (regime == "high") {
    c.temperature = Temperature::high(kelvin);
  } else {
    throw InvalidInput("regime must be zero, finite or high");
  }

  c.distance = parse_real("distance", s.at("distance"));
  c.d_min = parse_real("d_min", s.at("d_min"));
  c.d_max = parse_real("d_max", s.at("d_max"));
  c.d_count = static_cast<int>(parse_integer("d_count", s.at("d_count")));
  if (!(c.distance > 0.0) || !std::isfinite(c.distance)) throw InvalidInput("distance must be > 0");
  if (!(c.d_min > 0.0) || !std::isfinite(c.d_max) || c.d_count < 1 || c.d_count > 100000) {
    throw InvalidInput("distance grid needs d_min > 0 and 1 <= d_count <= 100000");
  }
  if (c.d_count > 1 && !(c.d_max > c.d_min)) throw InvalidInput("distance grid must be increasing");

  c.eps_nl_list = parse_list("eps_nl_list", s.at("eps_nl_list"));
  c.eps_lin_list = parse_list("eps_lin_list", s.at("eps_lin_list"));
  for (const double e : c.eps_nl_list) Permittivity::from_value(e);
  for (const double e : c.eps_lin_list) Permittivity::from_value(e);

  c.quadrature.rel_tol = parse_real("tol", s.at("tol"));
  check_tolerance(c.quadrature.rel_tol);

  const std::string& method = s.at("method");
  if (method == "factorized") {
    c.method = NonlinearMethod::Factorized;
  } else if (method == "direct") {
    c.method = NonlinearMethod::Direct;
  } else {
    throw InvalidInput("method must be factorized or direct");
  }
  const std::string& poly = s.at("polynomial");
  if (poly == "contraction") {
    c.polynomial = MirrorPolynomial::Contraction;
  } else if (poly == "printed") {
    c.polynomial = MirrorPolynomial::Printed;
  } else {
    throw InvalidInput("polynomial must be contraction or printed");
  }

  c.out = s.at("out");
  c.threads = static_cast<int>(parse_integer("threads", s.at("threads")));
  if (c.threads < 1 || c.threads > 256) throw InvalidInput("threads must lie in [1, 256]");
  const long long seed = parse_integer("seed", s.at("seed"));
  if (seed < 0) throw InvalidInput("seed must be >= 0");

  c.lab.n_points = static_cast<int>(parse_integer("lab_points", s.at("lab_points")));
  c.lab.spacing = parse_real("lab_spacing", s.at("lab_spacing"));
  c.lab.omega = parse_real("lab_omega", s.at("lab_omega"));
  c.lab.eta_rel = parse_real("lab_eta_rel", s.at("lab_eta_rel"));
  c.lab.eps_alpha = parse_real("lab_eps_alpha", s.at("lab_eps_alpha"));
  c.lab.eps_beta = parse_real("lab_eps_beta", s.at("lab_eps_beta"));
  c.lab.chi_strength = parse_real("lab_chi_strength", s.at("lab_chi_strength"));
  c.lab.b = parse_real("lab_b", s.at("lab_b"));
  const long long samples = parse_integer("lab_samples", s.at("lab_samples"));
  if (samples < 0) throw InvalidInput("lab_samples must be >= 1000");
  c.lab.samples = static_cast<std::size_t>(samples);
  c.lab.seed = static_cast<std::uint64_t>(seed);
  c.lab.threads = c.threads;
  c.lab.validate();
  return c;
}

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 14695981039346656037ull;
  auto feed = [&h](const std::string& s) {
    for (const unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [k, v] : config.resolved) {
    if (k == "out" || k == "threads") continue;  // do not change the numbers
    feed(k);
    feed("=");
    feed(v);
    feed("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace nlcasimir::cli
