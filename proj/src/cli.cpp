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

#include "nlcasimir/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "nlcasimir/lifshitz_linear.hpp"
#include "nlcasimir/lifshitz_nonlinear.hpp"
#include "nlcasimir/operator_lab.hpp"

namespace nlcasimir::cli {

namespace {

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"pressure", "linear and nonlinear pressure at one distance"},
    {"scan-distance", "pressure on a log-spaced distance grid"},
    {"scan-epsilon", "dimensionless I_lin and I_nl over permittivity lists"},
    {"transparent", "transparent nonlinear plate against a mirror, two evaluation paths"},
    {"crossover", "distance where the nonlinear term equals the linear term"},
    {"verify", "operator-lab identity and Monte-Carlo checks"}};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const RunConfig& config, const std::string& header) : out_(out) {
    out_ << header << "\n# config-hash: " << config_hash(config) << "\n";
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }

 private:
  std::ostream& out_;
};

// Evaluates f(0..n-1) on up to 'threads' workers; results stay in index order.
template <class T>
std::vector<T> parallel_map(std::size_t n, int threads, const std::function<T(std::size_t)>& f) {
  std::vector<T> out(n);
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

double kelvin_column(const Temperature& t) { return t.regime == Temperature::Regime::Zero ? 0.0 : t.kelvin; }

PressureResult evaluate(const RunConfig& c, const LayerStack& stack) {
  PressureResult r;
  r.regime = stack.temperature().regime;
  r.linear = pressure_linear(stack, c.quadrature);
  r.nonlinear = pressure_nonlinear(stack, c.quadrature, c.method);
  r.total = r.linear.value + r.nonlinear.value;
  r.total_error = r.linear.abs_error + r.nonlinear.abs_error;
  r.converged = r.linear.converged && r.nonlinear.converged;
  return r;
}

int pressure_rows(const RunConfig& c, const std::vector<double>& distances, std::ostream& out) {
  CsvWriter csv(out, c, "d,T,P_lin,P_nl,P_total,err_lin,err_nl");
  const auto rows = parallel_map<PressureResult>(distances.size(), c.threads,
                                                 [&](std::size_t i) { return evaluate(c, c.stack_at(distances[i])); });
  bool ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    csv.row({num(distances[i]), num(kelvin_column(c.temperature)), num(r.linear.value), num(r.nonlinear.value),
             num(r.total), num(r.linear.abs_error), num(r.nonlinear.abs_error)});
    ok = ok && r.converged;
  }
  return ok ? kOk : kUnconverged;
}

int scan_epsilon(const RunConfig& c, std::ostream& out) {
  if (c.temperature.regime == Temperature::Regime::Finite) {
    throw InvalidInput("scan-epsilon needs regime zero or high");
  }
  struct Point {
    double eps_lin, eps_nl;
  };
  std::vector<Point> points;
  for (const double el : c.eps_lin_list) {
    for (const double en : c.eps_nl_list) points.push_back({el, en});
  }
  const auto rows = parallel_map<std::pair<IntegrationResult, IntegrationResult>>(
      points.size(), c.threads, [&](std::size_t i) {
        const MaterialResponse nl{Permittivity::from_value(points[i].eps_nl), 0.0};
        const MaterialResponse lin{Permittivity::from_value(points[i].eps_lin), 0.0};
        return std::make_pair(i_lin(nl, lin, c.temperature.regime, c.distance, c.quadrature),
                              i_nl(nl, lin, c.temperature.regime, c.distance, c.quadrature));
      });
  CsvWriter csv(out, c, "eps_lin,eps_nl,I_lin,I_nl,err_lin,err_nl");
  bool ok = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [il, in] = rows[i];
    csv.row({num(points[i].eps_lin), num(points[i].eps_nl), num(il.value), num(in.value), num(il.abs_error),
             num(in.abs_error)});
    ok = ok && il.converged && in.converged;
  }
  return ok ? kOk : kUnconverged;
}

int transparent(const RunConfig& c, std::ostream& out, std::ostream& log) {
  const double chi3 = c.nonlinear_plate.chi3;
  const LayerStack stack({Permittivity::constant(1.0), chi3}, {Permittivity::perfect_mirror(), 0.0}, c.distance,
                         c.temperature);
  const PressureTerm ct = pressure_transparent_mirror(c.distance, c.temperature, chi3, c.quadrature, c.polynomial);
  const MirrorPolynomial other =
      c.polynomial == MirrorPolynomial::Contraction ? MirrorPolynomial::Printed : MirrorPolynomial::Contraction;
  const PressureTerm alt = pressure_transparent_mirror(c.distance, c.temperature, chi3, c.quadrature, other);
  const PressureTerm nl = pressure_nonlinear(stack, c.quadrature, c.method);
  const double rel = ct.value == 0.0 && nl.value == 0.0 ? 0.0 : std::abs(nl.value / ct.value - 1.0);

  CsvWriter csv(out, c, "d,T,P_transparent,P_nonlinear,rel_diff,P_transparent_alt,err_transparent,err_nonlinear");
  csv.row({num(c.distance), num(kelvin_column(c.temperature)), num(ct.value), num(nl.value), num(rel),
           num(alt.value), num(ct.abs_error), num(nl.abs_error)});
  log << "transparent-plate/mirror path vs full kernel: relative difference " << num(rel) << "\n";
  return ct.converged && nl.converged && alt.converged ? kOk : kUnconverged;
}

int crossover(const RunConfig& c, std::ostream& out, std::ostream& log) {
  const CrossoverResult r = crossover_distance(c.stack(), c.quadrature);
  CsvWriter csv(out, c, "eps_nl,eps_lin,chi3,d_star,iterations");
  const double eps_nl = c.nonlinear_plate.epsilon.is_constant() ? c.nonlinear_plate.epsilon.at(0.0) : std::nan("");
  const double eps_lin = c.linear_plate.epsilon.is_constant() ? c.linear_plate.epsilon.at(0.0) : std::nan("");
  csv.row({num(eps_nl), num(eps_lin), num(c.nonlinear_plate.chi3), num(r.distance.value_or(std::nan(""))),
           std::to_string(r.iterations)});
  if (!r.distance) log << "no crossover in [" << kCrossoverMin << ", " << kCrossoverMax << "] m\n";
  return r.converged ? kOk : kUnconverged;
}

int verify(const RunConfig& c, std::ostream& out, std::ostream& log) {
  const auto checks = lab::run_verification(c.lab);
  CsvWriter csv(out, c, "check,value,relation,threshold,status");
  bool ok = true;
  for (const auto& chk : checks) {
    csv.row({chk.name, num(chk.value), chk.relation, num(chk.threshold), chk.pass ? "PASS" : "FAIL"});
    ok = ok && chk.pass;
  }
  log << (ok ? "all operator checks passed\n" : "operator checks FAILED\n");
  return ok ? kOk : kUnconverged;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const std::string& sub = config.subcommand;
  if (sub == "pressure") return pressure_rows(config, {config.distance}, out);
  if (sub == "scan-distance") return pressure_rows(config, config.distance_grid(), out);
  if (sub == "scan-epsilon") return scan_epsilon(config, out);
  if (sub == "transparent") return transparent(config, out, log);
  if (sub == "crossover") return crossover(config, out, log);
  if (sub == "verify") return verify(config, out, log);
  throw InvalidInput("unknown subcommand '" + sub + "'");
}

int main(int argc, char** argv) {
  CLI::App app{"Casimir pressure with a chi3 plate, and operator identity checks"};
  app.require_subcommand(1);

  std::string config_path;
  Settings overrides;
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : kSubcommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key = value config file");
    for (const auto& [key, def] : known_keys()) {
      sub->add_option_function<std::string>(
          "--" + key, [&overrides, key = key](const std::string& v) { overrides[key] = v; },
          "default: " + (def.empty() ? std::string("(none)") : def));
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidConfig;
  }

  std::string sub_name;
  for (const CLI::App* s : subs) {
    if (s->parsed()) sub_name = s->get_name();
  }

  RunConfig config;
  try {
    const Settings file = config_path.empty() ? Settings{} : read_config_file(config_path);
    config = resolve_config(sub_name, file, overrides);
  } catch (const InvalidInput& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kInvalidConfig;
  }

  std::ostringstream buffer;
  int status = kOk;
  try {
    status = run(config, buffer, std::cerr);
  } catch (const InvalidInput& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kUnconverged;
  }

  if (config.out == "-") {
    std::cout << buffer.str();
  } else {
    std::ofstream f(config.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write '" << config.out << "'\n";
      return kInvalidConfig;
    }
    f << buffer.str();
  }
  if (status == kUnconverged) std::cerr << "warning: numerics did not converge to the requested tolerance\n";
  return status;
}

}  // namespace nlcasimir::cli
