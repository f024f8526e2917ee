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

#include <catch_amalgamated.hpp>

#include "heraldix/demux.hpp"
#include "heraldix/error.hpp"

using namespace heraldix;
using Catch::Matchers::WithinAbs;

TEST_CASE("routing blocks", "[demux]") {
  DemuxConfig cfg;
  CHECK(channel_of(cfg, 1) == 1);
  CHECK(channel_of(cfg, 25) == 1);
  CHECK(channel_of(cfg, 30) == 2);
  CHECK(channel_of(cfg, 100) == 4);
  CHECK(channel_of(cfg, 101) == 1);
  DemuxConfig toy;
  toy.cycle_len = 8;
  toy.laser_rep_hz = 8e6;
  CHECK(channel_of(toy, 7) == 4);
}

TEST_CASE("schedule is balanced and periodic", "[demux]") {
  DemuxConfig cfg;
  const auto s = schedule(cfg, 1000);
  std::array<int, 4> per{};
  for (int c : s) per[c - 1]++;
  CHECK(per == std::array<int, 4>{250, 250, 250, 250});
  for (std::size_t i = 100; i < s.size(); ++i) CHECK(s[i] == s[i - 100]);
}

TEST_CASE("schedule CSV", "[demux]") {
  const auto csv = schedule_csv(DemuxConfig{}, 3);
  CHECK(csv == "pulse_index,channel\n1,1\n2,1\n3,1\n");
}

TEST_CASE("efficiency budget", "[demux]") {
  DemuxConfig cfg;
  CHECK(efficiency_budget(cfg) == 1.0);
  cfg.eta_f = 0.263;
  cfg.eta_w = 0.83;
  cfg.eta_l = 0.80;
  CHECK_THAT(efficiency_budget(cfg), WithinAbs(0.174632, 1e-12));
}

TEST_CASE("invalid demux configurations", "[demux]") {
  DemuxConfig cfg;
  cfg.cycle_len = 10;
  cfg.laser_rep_hz = 10e6;
  CHECK_THROWS_AS(cfg.validate(), Error);
  DemuxConfig rate;
  rate.pc_rep_hz = 1e6;
  CHECK_THROWS_AS(rate.validate(), Error);
  DemuxConfig eff;
  eff.eta_w = 1.1;
  CHECK_THROWS_AS(eff.validate(), Error);
}
