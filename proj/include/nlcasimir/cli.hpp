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

#include <ostream>

#include "nlcasimir/config.hpp"

namespace nlcasimir::cli {

enum ExitCode : int { kOk = 0, kInvalidConfig = 1, kUnconverged = 2 };

/// Runs one subcommand and writes its CSV to out. Diagnostics go to log.
int run(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Full command line: subcommand, --config PATH and one --key VALUE flag per config key.
int main(int argc, char** argv);

}  // namespace nlcasimir::cli
