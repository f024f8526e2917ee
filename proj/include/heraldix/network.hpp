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

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heraldix/devices.hpp"
#include "heraldix/fock.hpp"
#include "heraldix/optics.hpp"

namespace heraldix {

/// Serializable description of one optical element.
struct ElementSpec {
  enum class Kind { Pbs, HalfWave, QuarterWave };

  Kind kind = Kind::Pbs;
  BasisName basis = BasisName::HV;          // pbs only
  std::optional<PolarizationBasis> custom;  // pbs with BasisName::Custom
  double angle_deg = 0.0;                   // wave-plates only
  std::vector<Path> paths;  // pbs: in_a, in_b, out_t, out_r; plates: path

  static ElementSpec pbs(BasisName b, Path in_a, Path in_b, Path out_t,
                         Path out_r);
  static ElementSpec hwp(double angle_deg, Path p);
  static ElementSpec qwp(double angle_deg, Path p);

  ModeLinearMap build() const;
};

std::string to_string(ElementSpec::Kind k);

/// Terminal measurement on one path: rotate `basis` onto H/V, then the
/// transmitted outcome lands on `detector_t` and the reflected one on
/// `detector_r`.
struct Analyzer {
  PolarizationBasis basis = PolarizationBasis::hv();
  std::string detector_t;
  std::string detector_r;
};

/// Detector id -> reported count. Every detector of the network is present,
/// including those reporting zero.
using ClickPattern = std::map<std::string, int>;

std::string to_string(const ClickPattern& p);

class Network {
 public:
  Network() = default;

  void add(ElementSpec spec);
  void set_analyzer(Path path, Analyzer analyzer);

  const std::vector<ElementSpec>& specs() const { return specs_; }
  const std::vector<ModeLinearMap>& elements() const { return maps_; }
  const std::map<Path, Analyzer>& analyzers() const { return analyzers_; }

  /// Detector ids in canonical (sorted) order.
  std::vector<std::string> detectors() const;

  /// Path observed by each detector and the analyzer outcome (0 = t, 1 = r).
  std::pair<Path, int> detector_port(const std::string& id) const;

  /// Elements from the first one whose domain touches `paths`, keeping
  /// all analyzers. Used to inject states part-way through the circuit.
  Network downstream_of(std::span<const Path> paths) const;

  /// Same network minus elements whose index is in `drop`.
  Network without_elements(std::span<const std::size_t> drop) const;

  std::string to_json() const;
  static Network from_json(std::string_view text);

 private:
  std::vector<ElementSpec> specs_;
  std::vector<ModeLinearMap> maps_;
  std::map<Path, Analyzer> analyzers_;
};

/// The heralded CNOT: PBS1 (HV) on (c_in, a1) -> (2, 1); PBS2 (DA) on
/// (a2, t_in) -> (4, 3); optional HWP at 0 on path 2; PBS3 (RL) on (2, 3) ->
/// (2', 3'); HV analyzers D_H1/D_V1 on 2' and D_H2/D_V2 on 3'. Paths 1 and 4
/// carry the control and target outputs.
Network heralded_cnot_network(bool with_hwp = true);

/// Adds analyzers on the two gate outputs: detectors "C_t", "C_r" on path 1
/// and "T_t", "T_r" on path 4 (t/r = transmitted/reflected basis vector).
Network with_output_analyzers(Network net, const PolarizationBasis& control,
                              const PolarizationBasis& target);

/// Element-by-element propagation of each branch.
std::vector<Branch> propagate(const Network& net, const MixedEnsemble& input);
StateVector propagate(const Network& net, const StateVector& input);

struct OutcomeEntry {
  double probability = 0.0;
  /// Conditional state on the unmeasured paths, weights normalized to one.
  /// Empty unless requested.
  MixedEnsemble conditional;
};

using OutcomeDistribution = std::map<ClickPattern, OutcomeEntry>;

struct OutcomeOptions {
  bool keep_states = false;
  /// Optional per-detector override of the common model.
  std::map<std::string, DetectorModel> per_detector;
};

OutcomeDistribution outcome_distribution(const Network& net,
                                         const MixedEnsemble& input,
                                         const DetectorModel& det,
                                         const OutcomeOptions& opts = {});

/// Sum of probabilities of patterns accepted by `pred`.
double probability_of(const OutcomeDistribution& d,
                      const std::function<bool(const ClickPattern&)>& pred);

// ------------------------------------------------------------ Bell states

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellState, 4> kBellStates{
    BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus,
    BellState::PsiMinus};

std::string to_string(BellState b);

/// Bell state of two photons on paths p (first qubit) and q.
StateVector bell_state(BellState b, Path p, Path q);

/// For each Bell state injected (ideal photons) on paths 2, 3 of `net`,
/// the coincidence patterns with exactly one photon on each of two analyzer
/// paths. Throws Error("analyzer does not separate Bell states") unless
/// exactly two Bell states produce such coincidences and no pattern is
/// shared between them.
std::map<ClickPattern, BellState> bell_pattern_map(const Network& net);

/// U_CNOT (alpha|H> + beta|V>)_control (gamma|H> + delta|V>)_target, control
/// on path 1 and target on path 4.
StateVector cnot_reference(Complex alpha, Complex beta, Complex gamma,
                           Complex delta, Path control = paths::c_out,
                           Path target = paths::t_out);

/// Pauli operations taking the output left on paths 1, 4 after projecting
/// paths 2, 3 (just after PBS1/PBS2) onto `b` back to U_CNOT|psi>.
std::vector<ModeLinearMap> pauli_correction(BellState b);

/// Gate input alpha|H>+beta|V> on c_in, gamma|H>+delta|V> on t_in and the
/// ancillas |+> on a1 and |H> on a2.
std::vector<SourceSpec> gate_sources(Complex alpha, Complex beta,
                                     Complex gamma, Complex delta);

}  // namespace heraldix
