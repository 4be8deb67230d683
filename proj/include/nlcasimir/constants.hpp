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

#include <numbers>

namespace nlcasimir::constants {

// CODATA 2018, SI.
inline constexpr double hbar = 1.05457181765e-34;       // J s
inline constexpr double c = 299792458.0;                // m / s
inline constexpr double k_B = 1.380649e-23;             // J / K
inline constexpr double epsilon_0 = 8.8541878128e-12;   // F / m

inline constexpr double pi = std::numbers::pi;
inline constexpr double zeta3 = 1.2020569031595942854;  // Apery's constant

}  // namespace nlcasimir::constants
