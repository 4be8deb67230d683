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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nlcasimir/lifshitz_nonlinear.hpp"
#include "nlcasimir/materials.hpp"
#include "nlcasimir/operator_lab.hpp"

namespace nlcasimir::cli {

/// Raw key/value settings in file order of precedence (later wins).
using Settings = std::map<std::string, std::string>;

/// Every accepted key with its default value.
const std::vector<std::pair<std::string, std::string>>& known_keys();

/// Parses "key = value" lines with '#' comments. Throws InvalidInput on
/// malformed lines, unknown or repeated keys.
Settings parse_config_text(const std::string& text);
Settings read_config_file(const std::string& path);

struct RunConfig {
  std::string subcommand;
  MaterialResponse nonlinear_plate;
  MaterialResponse linear_plate;
  Temperature temperature;
  double distance = 1e-8;
  double d_min = 1e-9;
  double d_max = 1e-6;
  int d_count = 31;
  std::vector<double> eps_nl_list;
  std::vector<double> eps_lin_list;
  QuadratureOptions quadrature;
  NonlinearMethod method = NonlinearMethod::Factorized;
  MirrorPolynomial polynomial = MirrorPolynomial::Contraction;
  std::string out = "-";
  int threads = 1;
  lab::LabConfig lab;
  Settings resolved;  // all keys after defaults and overrides, for the provenance hash

  LayerStack stack() const;
  LayerStack stack_at(double d) const;
  /// Log-spaced distance grid d_min .. d_max with d_count points.
  std::vector<double> distance_grid() const;
};

/// Applies defaults, then the file settings, then the overrides; validates.
RunConfig resolve_config(const std::string& subcommand, const Settings& file, const Settings& overrides);

/// 64-bit FNV-1a hash of the resolved settings, as 16 hex digits.
std::string config_hash(const RunConfig& config);

}  // namespace nlcasimir::cli
