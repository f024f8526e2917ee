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

#include <random>

#include "heraldix/error.hpp"
#include "heraldix/fidelity.hpp"

using namespace heraldix;
using Catch::Matchers::WithinAbs;

TEST_CASE("reference table fidelities", "[fidelity]") {
  CHECK_THAT(hofmann_f1(reference_table('a')), WithinAbs(0.877475, 1e-12));
  CHECK_THAT(hofmann_f2(reference_table('b')), WithinAbs(0.8860, 1e-12));
  CHECK_THAT(hofmann_f3(reference_table('c')), WithinAbs(0.8677, 1e-12));
  CHECK_THROWS_AS(hofmann_f1(reference_table('b')), Error);
  CHECK_THROWS_AS(hofmann_f3(reference_table('a')), Error);
}

TEST_CASE("process bounds", "[fidelity]") {
  const auto b = process_bounds(0.8775, 0.8860);
  CHECK_THAT(b.lo, WithinAbs(0.7635, 1e-12));
  CHECK_THAT(b.hi, WithinAbs(0.8775, 1e-12));
  CHECK(b.entangling);
  const auto t = process_bounds(1, 1);
  CHECK(t.lo == 1.0);
  CHECK(t.hi == 1.0);
  const auto edge = process_bounds(0.5, 0.5);
  CHECK(edge.lo == 0.0);
  CHECK(edge.hi == 0.5);
  CHECK_FALSE(edge.entangling);
  CHECK(quantum_parallelism(0.8775, 0.886, 0.8677));
  CHECK_FALSE(quantum_parallelism(0.6, 0.6, 0.6));
}

TEST_CASE("fidelity report", "[fidelity]") {
  const auto r = fidelity_report(reference_table('a'), reference_table('b'), reference_table('c'),
                                 0.8343, "reference");
  CHECK_THAT(r.avg_gate, WithinAbs((0.877475 + 0.886 + 0.8677) / 3, 1e-12));
  CHECK(r.entangling);
  CHECK(r.parallelism);
  CHECK_FALSE(r.out_of_range);
  const auto bad = fidelity_report(reference_table('a'), reference_table('b'),
                                   reference_table('c'), 1.2, "x");
  CHECK(bad.out_of_range);
  CHECK(bad.bell_f == 1.2);
}

TEST_CASE("Bell-state fidelity", "[fidelity]") {
  CHECK_THAT(psi_minus_fidelity(0.8729, -0.8039, -0.7875), WithinAbs(0.83425, 1e-4));
  CHECK_THAT(psi_minus_fidelity(1, -1, -1), WithinAbs(1.0, 1e-15));
  CHECK_THAT(psi_minus_fidelity(1, 0, 0), WithinAbs(0.5, 1e-15));
  CHECK_THROWS_AS(psi_minus_fidelity(1.2, 0, 0), Error);
  CHECK_THROWS_AS(psi_minus_fidelity(0.5, -1.5, 0), Error);
}

TEST_CASE("GHZ fidelity", "[fidelity]") {
  CHECK_THAT(ghz_fidelity(2, 1.0, {1.0, -1.0}), WithinAbs(1.0, 1e-15));
  // Psi- maps to Phi+ under sigma_z (x) sigma_x: <xx> flips sign, <yy> does not.
  CHECK_THAT(ghz_fidelity(2, 0.8729, {0.8039, -0.7875}),
             WithinAbs(psi_minus_fidelity(0.8729, -0.8039, -0.7875), 1e-15));
}

TEST_CASE("three-photon GHZ state simulated in the Fock space", "[fidelity]") {
  // (|HHH> + |VVV>)/sqrt2 on paths 1..3.
  const std::vector<Path> ps{paths::p1, paths::p2, paths::p3};
  StateVector ghz;
  for (Pol p : {Pol::H, Pol::V}) {
    std::vector<std::pair<Mode, int>> occ;
    for (Path q : ps) occ.push_back({Mode{q, p, 0}, 1});
    ghz.add(FockState::from_occupation(occ), M_SQRT1_2);
  }
  ghz.prune();
  std::vector<double> corr;
  for (int k = 0; k < 3; ++k) {
    const double th = k * M_PI / 3;
    // Rotate the eigenbasis (H +- e^{i th} V)/sqrt2 of M_th onto H, V.
    Eigen::Matrix2cd u;
    const Complex e = std::polar(1.0, -th);
    u << M_SQRT1_2, M_SQRT1_2 * e, M_SQRT1_2, -M_SQRT1_2 * e;
    StateVector s = ghz;
    for (Path q : ps) s = apply(polarization_map(u, q), s);
    double m = 0;
    for (const auto& [f, a] : s.terms()) {
      int parity = 1;
      for (const auto& mode : f.photons()) parity *= mode.pol == Pol::H ? 1 : -1;
      m += parity * std::norm(a);
    }
    corr.push_back(m);
  }
  CHECK_THAT(ghz_fidelity(3, 1.0, corr), WithinAbs(1.0, 1e-12));
}

TEST_CASE("table CSV round trips", "[fidelity]") {
  for (char w : {'a', 'b', 'c'}) {
    const auto t = reference_table(w);
    CHECK(ProbabilityTable::from_csv(t.to_csv_grid()).diff(t, 0).empty());
    CHECK(ProbabilityTable::from_csv(t.to_csv_long()).diff(t, 0).empty());
  }
}

TEST_CASE("table validation and diff", "[fidelity]") {
  ProbabilityTable::Grid g{};
  g[0] = {0.5, 1, 1, 1};
  CHECK_THROWS_AS(ProbabilityTable(TableBasis::HV, TableBasis::HV, g), Error);
  auto cells = reference_table('a').cells();
  cells[0][0] -= 0.003;
  const ProbabilityTable changed(TableBasis::HV, TableBasis::HV, cells);
  const auto d = reference_table('a').diff(changed, 1e-12);
  REQUIRE(d.size() == 1);
  CHECK(d[0].find("P(HH|HH)") != std::string::npos);
  CHECK_THROWS_AS(reference_table('a').at("++", "HH"), Error);
}

TEST_CASE("F1 depends only on the correct-output cells", "[fidelity]") {
  std::mt19937 rng(3);
  auto cells = reference_table('a').cells();
  const double f = hofmann_f1(reference_table('a'));
  // Swap the two off-target entries of each column; column sums stay fixed.
  const int target[4] = {0, 1, 3, 2};
  for (int i = 0; i < 4; ++i) {
    std::vector<int> off;
    for (int o = 0; o < 4; ++o) {
      if (o != target[i]) off.push_back(o);
    }
    std::shuffle(off.begin(), off.end(), rng);
    std::swap(cells[off[0]][i], cells[off[1]][i]);
  }
  CHECK_THAT(hofmann_f1(ProbabilityTable(TableBasis::HV, TableBasis::HV, cells)),
             WithinAbs(f, 1e-15));
}

TEST_CASE("ideal simulated tomography", "[fidelity]") {
  const auto net = heralded_cnot_network();
  CHECK_THAT(hofmann_f1(simulate_tomography(net, {}, DetectorModel::ideal(), Protocol::F1)),
             WithinAbs(1.0, 1e-10));
  CHECK_THAT(hofmann_f2(simulate_tomography(net, {}, DetectorModel::ideal(), Protocol::F2)),
             WithinAbs(1.0, 1e-10));
  CHECK_THAT(hofmann_f3(simulate_tomography(net, {}, DetectorModel::ideal(), Protocol::F3)),
             WithinAbs(1.0, 1e-10));
  const auto b = simulate_bell(net, {}, DetectorModel::ideal());
  CHECK_THAT(b.fidelity, WithinAbs(1.0, 1e-10));
  CHECK_THAT(b.population, WithinAbs(1.0, 1e-10));
}

TEST_CASE("F1 degrades monotonically with photon distinguishability", "[fidelity]") {
  const auto net = heralded_cnot_network();
  double prev = 2.0;
  for (double x : {1.0, 0.95, 0.9, 0.8, 0.5, 0.0}) {
    const double f = hofmann_f1(
        simulate_tomography(net, SourceModel{1.0, x}, DetectorModel::ideal(), Protocol::F1));
    CHECK(f < prev + 1e-12);
    prev = f;
  }
  CHECK_THAT(prev, WithinAbs(0.5, 1e-10));
}

TEST_CASE("tomography needs heralds", "[fidelity]") {
  CHECK_THROWS_WITH(simulate_tomography(heralded_cnot_network(), SourceModel{0.0, 1.0},
                                        DetectorModel::ideal(), Protocol::F1),
                    "no heralds");
}

TEST_CASE("protocol names", "[fidelity]") {
  CHECK(parse_protocol("f2") == Protocol::F2);
  CHECK(to_string(Protocol::F3) == "f3");
  CHECK_THROWS_AS(parse_protocol("f4"), Error);
}
