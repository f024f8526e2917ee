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

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "heraldix/fock.hpp"

namespace heraldix {

/// Path and polarization, without the internal label.
struct SpatialMode {
  Path path{};
  Pol pol = Pol::H;
  friend constexpr auto operator<=>(const SpatialMode&,
                                    const SpatialMode&) = default;
};

enum class BasisName { HV, DA, RL, Custom };

std::string to_string(BasisName b);
BasisName parse_basis_name(std::string_view s);

/// Orthonormal polarization basis. The transmitted vector is the one a PBS in
/// this basis passes straight through.
class PolarizationBasis {
 public:
  /// Throws Error("non-orthogonal basis") unless the vectors are orthonormal
  /// within 1e-12.
  PolarizationBasis(Jones transmitted, Jones reflected,
                    BasisName name = BasisName::Custom);

  static PolarizationBasis hv();
  static PolarizationBasis da();
  static PolarizationBasis rl();
  static PolarizationBasis named(BasisName name);

  const Jones& transmitted() const { return transmitted_; }
  const Jones& reflected() const { return reflected_; }
  BasisName name() const { return name_; }

 private:
  Jones transmitted_;
  Jones reflected_;
  BasisName name_;
};

using ComplexMatrix = Eigen::MatrixXcd;

/// Linear map on creation operators, a^dag(in_j) -> sum_i M(i, j) a^dag(out_i).
/// Internal labels pass through untouched. Spatial modes that are neither in
/// the domain nor the codomain map to themselves; a photon sitting on a
/// codomain-only mode is an error, since the map would be ill-defined there.
class ModeLinearMap {
 public:
  /// Throws Error("map is not unitary") if ||M^dag M - I||_max >= 1e-12.
  ModeLinearMap(std::vector<SpatialMode> domain,
                std::vector<SpatialMode> codomain, ComplexMatrix matrix);

  static ModeLinearMap identity();

  const std::vector<SpatialMode>& domain() const { return domain_; }
  const std::vector<SpatialMode>& codomain() const { return codomain_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  /// Image of a^dag(mode) as (output mode, coefficient) pairs.
  std::vector<std::pair<SpatialMode, Complex>> image(SpatialMode m) const;

  /// Max-norm deviation of M^dag M from the identity.
  double unitarity_error() const;

  /// Matrix as CSV, one row per codomain mode, for debugging.
  std::string to_csv() const;

 private:
  std::vector<SpatialMode> domain_;
  std::vector<SpatialMode> codomain_;
  ComplexMatrix matrix_;
};

enum class WaveplateKind { Half, Quarter };

/// Wave-plate with its fast axis at `angle` radians from H.
///
/// Half: [[cos 2t, sin 2t], [sin 2t, -cos 2t]] (a real reflection, its own
/// inverse; t = 0 is diag(1, -1) and t = pi/8 takes H to +).
/// Quarter: R(t) diag(e^{i pi/4}, e^{-i pi/4}) R(-t), so the plate at t + pi/2
/// is the exact inverse of the plate at t, and t = pi/4 takes H to R up to a
/// global phase.
ModeLinearMap waveplate(WaveplateKind kind, double angle, Path path);

/// 2x2 Jones matrix of the plate above.
Eigen::Matrix2cd waveplate_jones(WaveplateKind kind, double angle);

/// Arbitrary in-place polarization transform on one path.
ModeLinearMap polarization_map(const Eigen::Matrix2cd& jones, Path path);

/// Polarizing beam splitter in `basis`. The transmitted basis vector goes
/// in_a -> out_t and in_b -> out_r; the reflected one goes in_a -> out_r and
/// in_b -> out_t. Reflection carries no phase. Output labels may equal input
/// labels for in-place wiring.
ModeLinearMap pbs(const PolarizationBasis& basis, Path in_a, Path in_b,
                  Path out_t, Path out_r);

/// Rotates `basis` on `path` onto H/V: transmitted -> H, reflected -> V.
ModeLinearMap analyzer_rotation(const PolarizationBasis& basis, Path path);

/// Pauli X / Z on one polarization qubit.
ModeLinearMap pauli_x(Path path);
ModeLinearMap pauli_z(Path path);

/// Applies the map photon by photon; norm is preserved. Throws
/// Error("mode out of map domain") for photons on codomain-only modes.
StateVector apply(const ModeLinearMap& map, const StateVector& s);

StateVector apply_all(std::span<const ModeLinearMap> maps, const StateVector& s);

/// Single-photon transfer matrix of a sequence of maps from `inputs` to
/// `outputs` (rows: outputs, columns: inputs).
ComplexMatrix transfer_matrix(std::span<const ModeLinearMap> maps,
                              std::span<const SpatialMode> inputs,
                              std::span<const SpatialMode> outputs);

/// Both H and V modes of each path, in path order.
std::vector<SpatialMode> polarization_modes(std::initializer_list<Path> paths);

}  // namespace heraldix
