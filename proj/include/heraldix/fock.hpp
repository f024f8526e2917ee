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

#include <array>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace heraldix {

using Complex = std::complex<double>;

/// Hard cap on the photon number of any Fock state.
inline constexpr int kMaxPhotons = 8;

/// Default amplitude-pruning threshold.
inline constexpr double kDefaultTolerance = 1e-12;

/// Spatial path identifier. Numeric paths print as their number; the gate's
/// named ports (c_in, a1, ...) carry reserved ids.
struct Path {
  std::uint16_t id = 0;
  friend constexpr auto operator<=>(const Path&, const Path&) = default;
};

namespace paths {
inline constexpr Path p1{1};
inline constexpr Path p2{2};
inline constexpr Path p3{3};
inline constexpr Path p4{4};
inline constexpr Path c_out = p1;
inline constexpr Path t_out = p4;
inline constexpr Path c_in{11};
inline constexpr Path a1{12};
inline constexpr Path a2{13};
inline constexpr Path t_in{14};
// Outputs of the Bell-analyzer beam splitter, printed as 2' and 3'.
inline constexpr Path p2_out{22};
inline constexpr Path p3_out{23};
}  // namespace paths

std::string path_name(Path p);

/// Accepts the reserved names ("c_in", "a1", "a2", "t_in", "c_out", "t_out",
/// "2'", "3'") or a decimal id.
Path parse_path(std::string_view name);

enum class Pol : std::uint8_t { H = 0, V = 1 };

char pol_char(Pol p);

/// A single bosonic mode: spatial path, polarization and internal
/// (temporal/spectral) label. Internal label 0 is the shared reference mode.
struct Mode {
  Path path{};
  Pol pol = Pol::H;
  std::uint8_t internal = 0;
  friend constexpr auto operator<=>(const Mode&, const Mode&) = default;
};

/// Polarization amplitudes in the (H, V) basis.
using Jones = std::array<Complex, 2>;

namespace jones {
Jones H();
Jones V();
Jones plus();   // (H + V)/sqrt2
Jones minus();  // (H - V)/sqrt2
Jones R();      // (H + iV)/sqrt2
Jones L();      // (H - iV)/sqrt2
double norm2(const Jones& j);
Complex inner(const Jones& a, const Jones& b);
}  // namespace jones

/// Occupation-number basis state. Stored as the sorted multiset of occupied
/// modes (one entry per photon), so equal occupations compare equal without
/// any sign or ordering bookkeeping.
class FockState {
 public:
  FockState() = default;

  static FockState from_occupation(
      std::span<const std::pair<Mode, int>> occupation);

  int photon_count() const { return size_; }
  std::span<const Mode> photons() const { return {modes_.data(), size_}; }
  int count(const Mode& m) const;
  int path_count(Path p) const;
  std::vector<std::pair<Mode, int>> occupation() const;

  FockState with_photon(const Mode& m) const;
  FockState without_photon(const Mode& m) const;

  /// Product of n_k! over occupied modes.
  double occupation_factorial() const;

  /// Splits into the photons on `selected` paths and the rest.
  std::pair<FockState, FockState> split(std::span<const Path> selected) const;

  friend auto operator<=>(const FockState&, const FockState&) = default;
  friend bool operator==(const FockState&, const FockState&) = default;

 private:
  std::array<Mode, kMaxPhotons> modes_{};
  std::uint8_t size_ = 0;
};

std::string to_string(const FockState& f);

/// Sparse superposition of Fock states. Terms are kept in canonical order;
/// amplitudes below the tolerance are dropped whenever a library operation
/// finishes. Norm may be below one after a projection.
class StateVector {
 public:
  using Terms = std::map<FockState, Complex>;

  explicit StateVector(double tolerance = kDefaultTolerance)
      : tolerance_(tolerance) {}

  static StateVector vacuum(double tolerance = kDefaultTolerance);
  static StateVector basis(const FockState& f, Complex amplitude = 1.0,
                           double tolerance = kDefaultTolerance);

  const Terms& terms() const { return terms_; }
  double tolerance() const { return tolerance_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Complex amplitude(const FockState& f) const;
  double norm2() const;

  /// Accumulates into a term; call prune() once accumulation is complete.
  void add(const FockState& f, Complex amplitude);
  void prune();

  StateVector normalized() const;
  StateVector scaled(Complex factor) const;

  friend StateVector operator+(const StateVector& a, const StateVector& b);
  friend StateVector operator-(const StateVector& a, const StateVector& b);
  friend StateVector operator*(Complex factor, const StateVector& s) {
    return s.scaled(factor);
  }

 private:
  Terms terms_;
  double tolerance_ = kDefaultTolerance;
};

std::string to_string(const StateVector& s);

/// One weighted pure branch of a classical mixture.
struct Branch {
  double weight = 0.0;
  StateVector state;
};

/// Classical mixture of pure states; weights may sum to less than one.
class MixedEnsemble {
 public:
  MixedEnsemble() = default;
  explicit MixedEnsemble(std::vector<Branch> branches);
  static MixedEnsemble pure(StateVector s);

  const std::vector<Branch>& branches() const { return branches_; }
  double total_weight() const;

 private:
  std::vector<Branch> branches_;
};

/// Applies coeff * a^dagger(mode).
StateVector create(const StateVector& s, const Mode& mode,
                   Complex coeff = 1.0);

/// Applies the creation operator of a polarized photon on `path`.
StateVector create_photon(const StateVector& s, Path path, const Jones& pol,
                          std::uint8_t internal = 0);

/// One input photon. With overlap < 1 the photon's internal wavefunction is
/// sqrt(overlap)|0> + sqrt(1 - overlap)|internal>; two photons with distinct
/// private labels and equal `overlap` x have wavefunction overlap x.
struct PhotonSpec {
  Path path{};
  Jones pol = jones::H();
  std::uint8_t internal = 0;
  double overlap = 1.0;
};

/// Product of single photons on distinct paths applied to the vacuum.
/// Throws Error("path collision") or Error("invalid polarization").
StateVector make_product_input(std::span<const PhotonSpec> specs,
                               double tolerance = kDefaultTolerance);

/// <a|b>, conjugate-linear in `a`.
Complex inner_product(const StateVector& a, const StateVector& b);

/// |<a|b>|^2 / (|a|^2 |b|^2); zero if either vector is zero.
double fidelity(const StateVector& a, const StateVector& b);

/// Component of `s` whose per-path photon totals equal `counts` exactly.
StateVector project_photon_counts(const StateVector& s,
                                  const std::map<Path, int>& counts);

/// Squared-norm distribution of the per-path photon totals on `on_paths`.
std::map<std::vector<int>, double> path_count_distribution(
    const StateVector& s, std::span<const Path> on_paths);

/// Contracts `bra` (a state living only on `measured` paths) against `ket`,
/// returning the unnormalized residual on the remaining paths.
StateVector project_onto(const StateVector& bra, const StateVector& ket,
                         std::span<const Path> measured);

/// |a>|b> for states on disjoint paths. Throws Error("path collision") if
/// any path is occupied in both.
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// Keeps only the terms whose photons all sit on `kept` paths.
StateVector restrict_to_paths(const StateVector& s,
                              std::span<const Path> kept);

/// JSON array of {occupation: [[path,pol,internal,count],...], re, im}.
std::string to_json(const StateVector& s);
StateVector state_from_json(std::string_view text,
                            double tolerance = kDefaultTolerance);

}  // namespace heraldix
