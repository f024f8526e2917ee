// Copyright 2026 The Heraldix Authors
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

#include <string>
#include <string_view>
#include <vector>

#include "heraldix/demux.hpp"
#include "heraldix/devices.hpp"
#include "heraldix/fock.hpp"

namespace heraldix {

inline constexpr const char* kScenarioSchema = "heraldix.scenario/1";

/// Control and target input qubits.
struct GateInput {
  Complex alpha = M_SQRT1_2, beta = M_SQRT1_2;  // control
  Complex gamma = 1.0, delta = 0.0;             // target
};

/// Named product inputs: control then target, each one of H, V, plus, minus,
/// R, L (e.g. "plusH", "minusV", "HV"). Throws ConfigError if unknown.
GateInput parse_gate_input(std::string_view name);

struct Scenario {
  GateInput input;
  SourceModel source;
  DetectorModel detector;
  bool with_hwp = true;
  DemuxConfig demux;
  std::int64_t pulses = 100;
  std::vector<double> etas;          // herald-sweep grid
  std::string sweep_detector = "all";
};

/// Parses the JSON scenario. Unknown keys, a missing or unsupported
/// "schema", non-normalized amplitudes and out-of-range efficiencies all
/// throw ConfigError.
Scenario parse_scenario(std::string_view text);

/// A grid given either as "a,b,c" or "start:stop:step" (inclusive of stop
/// within half a step). Throws ConfigError.
std::vector<double> parse_grid(std::string_view text);

/// Shortest decimal form of x at 12 significant digits.
std::string format_number(double x);

}  // namespace heraldix
