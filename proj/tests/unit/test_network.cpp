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

#include "heraldix/error.hpp"
#include "heraldix/herald.hpp"
#include "heraldix/network.hpp"

using namespace heraldix;
using Catch::Matchers::WithinAbs;

namespace {
MixedEnsemble plus_h() {
  return source_ensemble(gate_sources(M_SQRT1_2, M_SQRT1_2, 1.0, 0.0), SourceModel{});
}
ClickPattern pattern(std::initializer_list<const char*> fired) {
  ClickPattern p;
  for (const auto& d : heralded_cnot_network().detectors()) p[d] = 0;
  for (const char* d : fired) p[d] = 1;
  return p;
}
}  // namespace

TEST_CASE("preset detectors", "[network]") {
  const auto net = heralded_cnot_network();
  CHECK(net.detectors() == std::vector<std::string>{"D_H1", "D_H2", "D_V1", "D_V2"});
  CHECK(net.detector_port("D_V2") == std::pair<Path, int>{paths::p3_out, 1});
  CHECK(net.specs().size() == 4);
  CHECK(heralded_cnot_network(false).specs().size() == 3);
}

TEST_CASE("ideal distribution: 1/32 per coincidence pattern", "[network]") {
  const auto d = outcome_distribution(heralded_cnot_network(), plus_h(), DetectorModel::ideal());
  double total = 0;
  for (const auto& [_, e] : d) total += e.probability;
  CHECK_THAT(total, WithinAbs(1.0, 1e-12));
  for (auto fired : {pattern({"D_H1", "D_H2"}), pattern({"D_V1", "D_V2"}),
                     pattern({"D_H1", "D_V2"}), pattern({"D_V1", "D_H2"})}) {
    REQUIRE(d.count(fired) == 1);
    CHECK_THAT(d.at(fired).probability, WithinAbs(1.0 / 32, 1e-14));
  }
  CHECK_THAT(probability_of(d, is_herald), WithinAbs(0.125, 1e-14));
  CHECK_THAT(probability_of(d, is_phi_plus_herald), WithinAbs(1.0 / 16, 1e-14));
}

TEST_CASE("heralded output state is the CNOT output", "[network]") {
  OutcomeOptions opts;
  opts.keep_states = true;
  const auto d = outcome_distribution(heralded_cnot_network(), plus_h(), DetectorModel::ideal(),
                                      opts);
  const auto& e = d.at(pattern({"D_H1", "D_H2"}));
  const auto want = cnot_reference(M_SQRT1_2, M_SQRT1_2, 1.0, 0.0);
  double f = 0;
  for (const auto& b : e.conditional.branches()) {
    const std::vector<Path> out{paths::p1, paths::p4};
    f += b.weight * fidelity(want, restrict_to_paths(b.state, out));
  }
  CHECK_THAT(f, WithinAbs(1.0, 1e-12));
}

TEST_CASE("Bell pattern map with and without the half-wave plate", "[network]") {
  const auto with = bell_pattern_map(heralded_cnot_network(true));
  CHECK(with.at(pattern({"D_H1", "D_H2"})) == BellState::PhiPlus);
  CHECK(with.at(pattern({"D_V1", "D_V2"})) == BellState::PhiPlus);
  CHECK(with.at(pattern({"D_H1", "D_V2"})) == BellState::PsiMinus);
  const auto without = bell_pattern_map(heralded_cnot_network(false));
  CHECK(without.at(pattern({"D_H1", "D_H2"})) == BellState::PhiMinus);
  CHECK(without.at(pattern({"D_V1", "D_H2"})) == BellState::PsiPlus);
}

TEST_CASE("a rotated analyzer does not separate Bell states", "[network]") {
  const Network preset = heralded_cnot_network();
  Network net;
  for (const auto& s : preset.specs()) net.add(s);
  const double t = M_PI / 8;
  net.set_analyzer(paths::p2_out,
                   {PolarizationBasis({std::cos(t), std::sin(t)}, {-std::sin(t), std::cos(t)}),
                    "D_H1", "D_V1"});
  net.set_analyzer(paths::p3_out, {PolarizationBasis::hv(), "D_H2", "D_V2"});
  CHECK_THROWS_WITH(bell_pattern_map(net), "analyzer does not separate Bell states");
}

TEST_CASE("probability is conserved under loss and partial overlap", "[network]") {
  const auto ens = source_ensemble(gate_sources(0.6, 0.8, Complex(0, 1), 0.0), SourceModel{0.4, 0.8});
  for (const auto& det : {DetectorModel::ideal(), DetectorModel::pseudo(4, 0.8),
                          DetectorModel::standard(0.7, ClickModel::Physical)}) {
    double total = 0;
    for (const auto& [_, e] : outcome_distribution(heralded_cnot_network(), ens, det)) {
      total += e.probability;
    }
    CHECK_THAT(total, WithinAbs(ens.total_weight(), 1e-10));
  }
}

TEST_CASE("per-detector overrides", "[network]") {
  OutcomeOptions opts;
  opts.per_detector["D_H1"] = DetectorModel::standard(0.0);
  const auto d = outcome_distribution(heralded_cnot_network(), plus_h(), DetectorModel::ideal(),
                                      opts);
  CHECK_THAT(probability_of(d, [](const ClickPattern& p) { return p.at("D_H1") > 0; }),
             WithinAbs(0.0, 1e-15));
}

TEST_CASE("network JSON round trip and strict keys", "[network]") {
  const auto net = heralded_cnot_network();
  const auto back = Network::from_json(net.to_json());
  CHECK(back.to_json() == net.to_json());
  CHECK_THROWS_AS(Network::from_json(R"({"schema":"heraldix.network/1","elements":[],"extra":1})"),
                  Error);
}

TEST_CASE("duplicate detector ids are rejected", "[network]") {
  Network net;
  net.set_analyzer(paths::p1, {PolarizationBasis::hv(), "A", "B"});
  CHECK_THROWS_AS(net.set_analyzer(paths::p2, {PolarizationBasis::hv(), "A", "C"}), Error);
}

TEST_CASE("downstream network starts at the Bell analyzer", "[network]") {
  const std::vector<Path> inner{paths::p2, paths::p3};
  const auto tail = heralded_cnot_network().downstream_of(inner);
  CHECK(tail.specs().size() == 2);
  CHECK(tail.detectors().size() == 4);
}

TEST_CASE("click pattern names", "[network]") {
  CHECK(to_string(pattern({})) == "none");
  auto p = pattern({"D_H1"});
  p["D_V2"] = 2;
  CHECK(to_string(p) == "D_H1&D_V2x2");
}
