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
#include "heraldix/optics.hpp"

using namespace heraldix;
using Catch::Matchers::WithinAbs;

namespace {
ComplexMatrix transfer(std::vector<ModeLinearMap> maps) {
  const auto modes = polarization_modes({paths::p1, paths::p2});
  return transfer_matrix(maps, modes, modes);
}

double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}
}  // namespace

TEST_CASE("bases are orthonormal", "[optics]") {
  for (auto b : {PolarizationBasis::hv(), PolarizationBasis::da(), PolarizationBasis::rl()}) {
    CHECK_THAT(std::abs(jones::inner(b.transmitted(), b.reflected())), WithinAbs(0.0, 1e-15));
  }
  CHECK_THROWS_WITH(PolarizationBasis(jones::H(), jones::plus()), "non-orthogonal basis");
}

TEST_CASE("wave-plate conventions", "[optics]") {
  const auto h0 = waveplate_jones(WaveplateKind::Half, 0.0);
  CHECK_THAT(std::abs(h0(1, 1) + 1.0), WithinAbs(0.0, 1e-15));
  const auto h8 = waveplate_jones(WaveplateKind::Half, M_PI / 8);
  CHECK_THAT(std::abs(h8(0, 0) - M_SQRT1_2), WithinAbs(0.0, 1e-15));
  CHECK_THAT(std::abs(h8(1, 0) - M_SQRT1_2), WithinAbs(0.0, 1e-15));
  for (double t : {0.1, 0.7, 2.3}) {
    const auto q = waveplate_jones(WaveplateKind::Quarter, t);
    const auto qi = waveplate_jones(WaveplateKind::Quarter, t + M_PI / 2);
    CHECK((qi * q - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("rotated PBS equals wave-plates around an HV PBS", "[optics]") {
  using P = std::vector<ModeLinearMap>;
  const auto hv = pbs(PolarizationBasis::hv(), paths::p1, paths::p2, paths::p1, paths::p2);
  const auto da = pbs(PolarizationBasis::da(), paths::p1, paths::p2, paths::p1, paths::p2);
  const auto rl = pbs(PolarizationBasis::rl(), paths::p1, paths::p2, paths::p1, paths::p2);
  auto both = [](WaveplateKind k, double t) {
    return P{waveplate(k, t, paths::p1), waveplate(k, t, paths::p2)};
  };
  P seq = both(WaveplateKind::Half, M_PI / 8);
  seq.push_back(hv);
  for (auto& m : both(WaveplateKind::Half, M_PI / 8)) seq.push_back(m);
  CHECK(max_diff(transfer(seq), transfer({da})) < 1e-14);

  P seq2 = both(WaveplateKind::Quarter, 3 * M_PI / 4);
  seq2.push_back(hv);
  for (auto& m : both(WaveplateKind::Quarter, M_PI / 4)) seq2.push_back(m);
  CHECK(max_diff(transfer(seq2), transfer({rl})) < 1e-14);
}

TEST_CASE("PBS routes its basis vectors", "[optics]") {
  const auto m = pbs(PolarizationBasis::hv(), paths::c_in, paths::a1, paths::p2, paths::p1);
  const auto in = create_photon(StateVector::vacuum(), paths::c_in, jones::V());
  const auto out = apply(m, in);
  const auto want = create_photon(StateVector::vacuum(), paths::p1, jones::V());
  CHECK_THAT(fidelity(out, want), WithinAbs(1.0, 1e-15));
  CHECK_THROWS_WITH(pbs(PolarizationBasis::hv(), paths::p1, paths::p1, paths::p2, paths::p3),
                    "pbs ports must be distinct");
}

TEST_CASE("maps preserve the norm of multi-photon states", "[optics]") {
  std::vector<PhotonSpec> specs{{paths::p1, jones::R()}, {paths::p2, jones::plus()}};
  const auto s = make_product_input(specs);
  const auto m = pbs(PolarizationBasis::da(), paths::p1, paths::p2, paths::p3, paths::p4);
  CHECK_THAT(apply(m, s).norm2(), WithinAbs(1.0, 1e-14));
  CHECK(m.unitarity_error() < 1e-15);
}

TEST_CASE("non-unitary matrices and codomain-only photons are rejected", "[optics]") {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, 0.5;
  const auto modes = polarization_modes({paths::p1});
  CHECK_THROWS_WITH(ModeLinearMap(modes, modes, m), "map is not unitary");
  const auto route = pbs(PolarizationBasis::hv(), paths::p1, paths::p2, paths::p3, paths::p4);
  const auto stray = create_photon(StateVector::vacuum(), paths::p3, jones::H());
  CHECK_THROWS_WITH(apply(route, stray), "mode out of map domain");
}

TEST_CASE("Pauli operators", "[optics]") {
  const auto h = create_photon(StateVector::vacuum(), paths::p1, jones::H());
  const auto v = create_photon(StateVector::vacuum(), paths::p1, jones::V());
  CHECK_THAT(fidelity(apply(pauli_x(paths::p1), h), v), WithinAbs(1.0, 1e-15));
  const auto p = create_photon(StateVector::vacuum(), paths::p1, jones::plus());
  const auto mi = create_photon(StateVector::vacuum(), paths::p1, jones::minus());
  CHECK_THAT(fidelity(apply(pauli_z(paths::p1), p), mi), WithinAbs(1.0, 1e-15));
}

TEST_CASE("analyzer rotation sends the basis to H and V", "[optics]") {
  const auto r = create_photon(StateVector::vacuum(), paths::p1, jones::R());
  const auto h = create_photon(StateVector::vacuum(), paths::p1, jones::H());
  CHECK_THAT(fidelity(apply(analyzer_rotation(PolarizationBasis::rl(), paths::p1), r), h),
             WithinAbs(1.0, 1e-15));
}
