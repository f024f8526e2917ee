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

#include "heraldix/optics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "heraldix/error.hpp"

namespace heraldix {

namespace {

constexpr double kUnitarityTolerance = 1e-12;

Eigen::Vector2cd as_vector(const Jones& j) { return {j[0], j[1]}; }

Eigen::Matrix2cd projector(const Jones& j) {
  Eigen::Vector2cd v = as_vector(j);
  return v * v.adjoint();
}

int index_of(const std::vector<SpatialMode>& modes, SpatialMode m) {
  auto it = std::find(modes.begin(), modes.end(), m);
  return it == modes.end() ? -1 : static_cast<int>(it - modes.begin());
}

}  // namespace

std::string to_string(BasisName b) {
  switch (b) {
    case BasisName::HV: return "HV";
    case BasisName::DA: return "DA";
    case BasisName::RL: return "RL";
    case BasisName::Custom: return "custom";
  }
  return "custom";
}

BasisName parse_basis_name(std::string_view s) {
  if (s == "HV") return BasisName::HV;
  if (s == "DA") return BasisName::DA;
  if (s == "RL") return BasisName::RL;
  if (s == "custom") return BasisName::Custom;
  throw Error("unknown basis '" + std::string(s) + "'");
}

// -------------------------------------------------------- PolarizationBasis

PolarizationBasis::PolarizationBasis(Jones transmitted, Jones reflected,
                                     BasisName name)
    : transmitted_(transmitted), reflected_(reflected), name_(name) {
  if (std::abs(jones::norm2(transmitted_) - 1.0) > 1e-12 ||
      std::abs(jones::norm2(reflected_) - 1.0) > 1e-12 ||
      std::abs(jones::inner(transmitted_, reflected_)) > 1e-12) {
    throw Error("non-orthogonal basis");
  }
}

PolarizationBasis PolarizationBasis::hv() {
  return {jones::H(), jones::V(), BasisName::HV};
}
PolarizationBasis PolarizationBasis::da() {
  return {jones::plus(), jones::minus(), BasisName::DA};
}
PolarizationBasis PolarizationBasis::rl() {
  return {jones::R(), jones::L(), BasisName::RL};
}

PolarizationBasis PolarizationBasis::named(BasisName name) {
  switch (name) {
    case BasisName::HV: return hv();
    case BasisName::DA: return da();
    case BasisName::RL: return rl();
    case BasisName::Custom: break;
  }
  throw Error("custom basis needs explicit vectors");
}

// ------------------------------------------------------------ ModeLinearMap

ModeLinearMap::ModeLinearMap(std::vector<SpatialMode> domain,
                             std::vector<SpatialMode> codomain,
                             ComplexMatrix matrix)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      matrix_(std::move(matrix)) {
  if (domain_.size() != codomain_.size() ||
      matrix_.rows() != static_cast<Eigen::Index>(codomain_.size()) ||
      matrix_.cols() != static_cast<Eigen::Index>(domain_.size())) {
    throw Error("map matrix shape does not match its modes");
  }
  if (unitarity_error() >= kUnitarityTolerance) {
    throw Error("map is not unitary");
  }
}

ModeLinearMap ModeLinearMap::identity() { return {{}, {}, ComplexMatrix(0, 0)}; }

std::vector<std::pair<SpatialMode, Complex>> ModeLinearMap::image(
    SpatialMode m) const {
  const int j = index_of(domain_, m);
  if (j < 0) {
    if (index_of(codomain_, m) >= 0) throw Error("mode out of map domain");
    return {{m, Complex(1.0)}};
  }
  std::vector<std::pair<SpatialMode, Complex>> out;
  for (std::size_t i = 0; i < codomain_.size(); ++i) {
    const Complex c = matrix_(static_cast<Eigen::Index>(i), j);
    if (std::abs(c) > 0.0) out.emplace_back(codomain_[i], c);
  }
  return out;
}

double ModeLinearMap::unitarity_error() const {
  if (matrix_.size() == 0) return 0.0;
  const ComplexMatrix g = matrix_.adjoint() * matrix_ -
                          ComplexMatrix::Identity(matrix_.cols(), matrix_.cols());
  return g.cwiseAbs().maxCoeff();
}

std::string ModeLinearMap::to_csv() const {
  std::ostringstream os;
  os << "out\\in";
  for (const auto& m : domain_) os << ',' << pol_char(m.pol) << '_' << path_name(m.path);
  os << '\n';
  char buf[64];
  for (std::size_t i = 0; i < codomain_.size(); ++i) {
    os << pol_char(codomain_[i].pol) << '_' << path_name(codomain_[i].path);
    for (std::size_t j = 0; j < domain_.size(); ++j) {
      const Complex c = matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      std::snprintf(buf, sizeof buf, ",%.12g%+.12gi", c.real(), c.imag());
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

// ----------------------------------------------------------------- elements

Eigen::Matrix2cd waveplate_jones(WaveplateKind kind, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix2cd rot;
  rot << c, -s, s, c;
  Eigen::Matrix2cd retarder = Eigen::Matrix2cd::Zero();
  if (kind == WaveplateKind::Half) {
    retarder(0, 0) = 1.0;
    retarder(1, 1) = -1.0;
  } else {
    retarder(0, 0) = std::polar(1.0, M_PI / 4);
    retarder(1, 1) = std::polar(1.0, -M_PI / 4);
  }
  return rot * retarder * rot.adjoint();
}

ModeLinearMap polarization_map(const Eigen::Matrix2cd& jones, Path path) {
  std::vector<SpatialMode> modes{{path, Pol::H}, {path, Pol::V}};
  return {modes, modes, ComplexMatrix(jones)};
}

ModeLinearMap waveplate(WaveplateKind kind, double angle, Path path) {
  return polarization_map(waveplate_jones(kind, angle), path);
}

ModeLinearMap pbs(const PolarizationBasis& basis, Path in_a, Path in_b,
                  Path out_t, Path out_r) {
  if (in_a == in_b || out_t == out_r) throw Error("pbs ports must be distinct");
  const Eigen::Matrix2cd t = projector(basis.transmitted());
  const Eigen::Matrix2cd r = projector(basis.reflected());
  std::vector<SpatialMode> domain{{in_a, Pol::H}, {in_a, Pol::V},
                                  {in_b, Pol::H}, {in_b, Pol::V}};
  std::vector<SpatialMode> codomain{{out_t, Pol::H}, {out_t, Pol::V},
                                    {out_r, Pol::H}, {out_r, Pol::V}};
  ComplexMatrix m(4, 4);
  m.block<2, 2>(0, 0) = t;  // in_a -> out_t
  m.block<2, 2>(2, 0) = r;  // in_a -> out_r
  m.block<2, 2>(2, 2) = t;  // in_b -> out_r
  m.block<2, 2>(0, 2) = r;  // in_b -> out_t
  return {std::move(domain), std::move(codomain), std::move(m)};
}

ModeLinearMap analyzer_rotation(const PolarizationBasis& basis, Path path) {
  Eigen::Matrix2cd u;
  u.row(0) = as_vector(basis.transmitted()).adjoint();
  u.row(1) = as_vector(basis.reflected()).adjoint();
  return polarization_map(u, path);
}

ModeLinearMap pauli_x(Path path) {
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  return polarization_map(x, path);
}

ModeLinearMap pauli_z(Path path) {
  Eigen::Matrix2cd z;
  z << 1, 0, 0, -1;
  return polarization_map(z, path);
}

// ---------------------------------------------------------------- transport

namespace {

void expand(const std::vector<std::vector<std::pair<Mode, Complex>>>& images,
            std::size_t k, FockState partial, Complex coeff,
            StateVector& out) {
  if (k == images.size()) {
    out.add(partial, coeff * std::sqrt(partial.occupation_factorial()));
    return;
  }
  for (const auto& [m, c] : images[k]) {
    expand(images, k + 1, partial.with_photon(m), coeff * c, out);
  }
}

}  // namespace

StateVector apply(const ModeLinearMap& map, const StateVector& s) {
  StateVector out(s.tolerance());
  std::vector<std::vector<std::pair<Mode, Complex>>> images;
  for (const auto& [f, a] : s.terms()) {
    images.clear();
    for (const Mode& m : f.photons()) {
      auto& img = images.emplace_back();
      for (const auto& [sm, c] : map.image({m.path, m.pol})) {
        img.emplace_back(Mode{sm.path, sm.pol, m.internal}, c);
      }
    }
    expand(images, 0, FockState{}, a / std::sqrt(f.occupation_factorial()), out);
  }
  out.prune();
  return out;
}

StateVector apply_all(std::span<const ModeLinearMap> maps, const StateVector& s) {
  StateVector cur = s;
  for (const auto& m : maps) cur = apply(m, cur);
  return cur;
}

ComplexMatrix transfer_matrix(std::span<const ModeLinearMap> maps,
                              std::span<const SpatialMode> inputs,
                              std::span<const SpatialMode> outputs) {
  ComplexMatrix t = ComplexMatrix::Zero(static_cast<Eigen::Index>(outputs.size()),
                                        static_cast<Eigen::Index>(inputs.size()));
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    const Mode in{inputs[j].path, inputs[j].pol, 0};
    const StateVector out =
        apply_all(maps, StateVector::basis(FockState{}.with_photon(in)));
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      const Mode o{outputs[i].path, outputs[i].pol, 0};
      t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          out.amplitude(FockState{}.with_photon(o));
    }
  }
  return t;
}

std::vector<SpatialMode> polarization_modes(std::initializer_list<Path> paths) {
  std::vector<SpatialMode> out;
  for (Path p : paths) {
    out.push_back({p, Pol::H});
    out.push_back({p, Pol::V});
  }
  return out;
}

}  // namespace heraldix
