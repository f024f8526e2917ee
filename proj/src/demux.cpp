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

#include "heraldix/demux.hpp"

#include <cmath>
#include <sstream>

#include "heraldix/error.hpp"

namespace heraldix {

void DemuxConfig::validate() const {
  if (cycle_len < 1 || channels < 1) throw Error("cycle and channels must be positive");
  if (cycle_len % channels != 0) {
    throw Error("cycle of " + std::to_string(cycle_len) + " pulses is not divisible by " +
                std::to_string(channels) + " channels");
  }
  if (!(laser_rep_hz > 0.0)) throw Error("laser repetition rate must be positive");
  const double expected = laser_rep_hz / cycle_len;
  if (pc_rep_hz != 0.0 && std::abs(pc_rep_hz - expected) > 1e-9 * expected) {
    throw Error("switching rate must equal laser rate / cycle length");
  }
  for (double e : {eta_f, eta_w, eta_l}) {
    if (!(e >= 0.0 && e <= 1.0)) throw Error("efficiency outside [0, 1]");
  }
}

int channel_of(const DemuxConfig& cfg, std::int64_t pulse) {
  cfg.validate();
  if (pulse < 1) throw Error("pulse index starts at 1");
  const std::int64_t block = cfg.cycle_len / cfg.channels;
  return static_cast<int>(((pulse - 1) % cfg.cycle_len) / block) + 1;
}

std::vector<int> schedule(const DemuxConfig& cfg, std::int64_t n_pulses) {
  cfg.validate();
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n_pulses, 0)));
  for (std::int64_t p = 1; p <= n_pulses; ++p) out.push_back(channel_of(cfg, p));
  return out;
}

std::string schedule_csv(const DemuxConfig& cfg, std::int64_t n_pulses) {
  const auto s = schedule(cfg, n_pulses);
  std::ostringstream os;
  os << "pulse_index,channel\n";
  for (std::size_t i = 0; i < s.size(); ++i) os << i + 1 << ',' << s[i] << '\n';
  return os.str();
}

double efficiency_budget(const DemuxConfig& cfg) {
  for (double e : {cfg.eta_f, cfg.eta_w, cfg.eta_l}) {
    if (!(e >= 0.0 && e <= 1.0)) throw Error("efficiency outside [0, 1]");
  }
  return cfg.eta_f * cfg.eta_w * cfg.eta_l;
}

}  // namespace heraldix
