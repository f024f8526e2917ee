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

#include <cstdint>
#include <string>
#include <vector>

namespace heraldix {

/// Active demultiplexer fanning one pulsed single-photon stream into
/// `channels` synchronized streams.
struct DemuxConfig {
  double laser_rep_hz = 76e6;
  int cycle_len = 100;
  int channels = 4;
  double pc_rep_hz = 0.0;  // 0: taken as laser_rep_hz / cycle_len
  double eta_f = 1.0;  // fiber coupling
  double eta_w = 1.0;  // waveguide / demultiplexer transmission
  double eta_l = 1.0;  // remaining losses

  /// Throws Error on a bad config (indivisible cycle, switching rate not
  /// laser_rep_hz / cycle_len within 1e-9 relative, efficiencies outside
  /// [0, 1]).
  void validate() const;
};

/// Channel (1-based) of pulse `pulse` (1-based): consecutive blocks of
/// cycle_len / channels pulses per channel, repeating every cycle.
int channel_of(const DemuxConfig& cfg, std::int64_t pulse);

/// Channel of pulses 1..n_pulses.
std::vector<int> schedule(const DemuxConfig& cfg, std::int64_t n_pulses);

/// CSV "pulse_index,channel" for pulses 1..n_pulses.
std::string schedule_csv(const DemuxConfig& cfg, std::int64_t n_pulses);

/// eta_s = eta_f * eta_w * eta_l.
double efficiency_budget(const DemuxConfig& cfg);

}  // namespace heraldix
