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
#include "heraldix/fock.hpp"

using namespace heraldix;
using Catch::Matchers::WithinAbs;

namespace {
FockState one(Path p, Pol pol, int n = 1) {
  const std::vector<std::pair<Mode, int>> occ{{Mode{p, pol, 0}, n}};
  return FockState::from_occupation(occ);
}
}  // namespace

TEST_CASE("creation operator carries the sqrt(n+1) factor", "[fock]") {
  const auto s = create_photon(create_photon(StateVector::vacuum(), paths::p1, jones::H()),
                               paths::p1, jones::H());
  CHECK_THAT(s.amplitude(one(paths::p1, Pol::H, 2)).real(), WithinAbs(std::sqrt(2.0), 1e-15));
  CHECK_THAT(s.norm2(), WithinAbs(2.0, 1e-15));
}

TEST_CASE("polarized photon splits over H and V", "[fock]") {
  const auto s = create_photon(StateVector::vacuum(), paths::p2, jones::R());
  CHECK_THAT(s.amplitude(one(paths::p2, Pol::H)).real(), WithinAbs(M_SQRT1_2, 1e-15));
  CHECK_THAT(s.amplitude(one(paths::p2, Pol::V)).imag(), WithinAbs(M_SQRT1_2, 1e-15));
  CHECK_THAT(s.norm2(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("product input rejects shared paths and bad polarizations", "[fock]") {
  std::vector<PhotonSpec> same{{paths::p1, jones::H()}, {paths::p1, jones::V()}};
  CHECK_THROWS_WITH(make_product_input(same), "path collision");
  std::vector<PhotonSpec> bad{{paths::p1, {Complex(1.0), Complex(1.0)}}};
  CHECK_THROWS_WITH(make_product_input(bad), "invalid polarization");
}

TEST_CASE("partial overlap gives the requested wavefunction overlap", "[fock]") {
  const double x = 0.7;
  std::vector<PhotonSpec> a{{paths::p1, jones::H(), 1, x}};
  std::vector<PhotonSpec> b{{paths::p1, jones::H(), 2, x}};
  CHECK_THAT(inner_product(make_product_input(a), make_product_input(b)).real(),
             WithinAbs(x, 1e-14));
}

TEST_CASE("inner product and fidelity", "[fock]") {
  const auto h = create_photon(StateVector::vacuum(), paths::p1, jones::H());
  const auto p = create_photon(StateVector::vacuum(), paths::p1, jones::plus());
  CHECK_THAT(inner_product(h, p).real(), WithinAbs(M_SQRT1_2, 1e-15));
  CHECK_THAT(fidelity(h, p), WithinAbs(0.5, 1e-15));
  CHECK(fidelity(h, StateVector{}) == 0.0);
}

TEST_CASE("photon-count projection and distribution", "[fock]") {
  std::vector<PhotonSpec> specs{{paths::p1, jones::H()}, {paths::p2, jones::V()}};
  const auto s = make_product_input(specs);
  CHECK(project_photon_counts(s, {{paths::p1, 1}, {paths::p2, 1}}).size() == 1);
  CHECK(project_photon_counts(s, {{paths::p1, 2}}).is_zero());
  const std::vector<Path> on{paths::p1};
  const auto d = path_count_distribution(s, on);
  REQUIRE(d.size() == 1);
  CHECK_THAT(d.at({1}), WithinAbs(1.0, 1e-15));
}

TEST_CASE("projection contracts the measured paths", "[fock]") {
  std::vector<PhotonSpec> specs{{paths::p1, jones::H()}, {paths::p2, jones::plus()}};
  const auto s = make_product_input(specs);
  const auto bra = create_photon(StateVector::vacuum(), paths::p2, jones::V());
  const std::vector<Path> measured{paths::p2};
  const auto rest = project_onto(bra, s, measured);
  CHECK_THAT(rest.norm2(), WithinAbs(0.5, 1e-15));
  CHECK_THAT(rest.amplitude(one(paths::p1, Pol::H)).real(), WithinAbs(M_SQRT1_2, 1e-15));
}

TEST_CASE("tensor product of disjoint states", "[fock]") {
  const auto a = create_photon(StateVector::vacuum(), paths::p1, jones::plus());
  const auto b = create_photon(StateVector::vacuum(), paths::p2, jones::minus());
  const auto ab = tensor_product(a, b);
  CHECK(ab.size() == 4);
  CHECK_THAT(ab.norm2(), WithinAbs(1.0, 1e-15));
  CHECK_THROWS_WITH(tensor_product(a, a), "path collision");
}

TEST_CASE("photon number cap", "[fock]") {
  StateVector s = StateVector::vacuum();
  for (int i = 0; i < kMaxPhotons; ++i) s = create_photon(s, paths::p1, jones::H());
  CHECK_THROWS_AS(create_photon(s, paths::p1, jones::H()), Error);
}

TEST_CASE("state JSON round trip", "[fock]") {
  std::vector<PhotonSpec> specs{{paths::c_in, jones::R()}, {paths::p3, jones::minus()}};
  const auto s = make_product_input(specs);
  const auto back = state_from_json(to_json(s));
  CHECK_THAT((back - s).norm2(), WithinAbs(0.0, 1e-24));
  CHECK_THROWS_AS(state_from_json("{}"), Error);
}

TEST_CASE("path names", "[fock]") {
  CHECK(path_name(paths::p2_out) == "2'");
  CHECK(parse_path("c_in") == paths::c_in);
  CHECK(parse_path("3") == paths::p3);
  CHECK_THROWS_AS(parse_path("nowhere"), Error);
}

TEST_CASE("mixed ensemble weights", "[fock]") {
  const auto v = StateVector::vacuum();
  CHECK_THROWS_AS(MixedEnsemble({{0.7, v}, {0.6, v}}), Error);
  CHECK_THAT(MixedEnsemble({{0.25, v}, {0.5, v}}).total_weight(), WithinAbs(0.75, 1e-15));
}
