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
#include <string>
#include <string_view>
#include <vector>

#include "heraldix/devices.hpp"
#include "heraldix/network.hpp"

namespace heraldix {

/// Two-qubit label sets. "DA-HV" is control in DA, target in HV.
enum class TableBasis { HV, DA, DAHV, RL };

std::string to_string(TableBasis b);
TableBasis parse_table_basis(std::string_view s);

/// The four two-qubit labels of a basis in canonical order, e.g. HH, HV, VH,
/// VV; DA labels use '+' and '-'.
const std::array<std::string, 4>& basis_labels(TableBasis b);

/// 4x4 output-input probability table: cell(out, in) = P(out | in).
class ProbabilityTable {
 public:
  using Grid = std::array<std::array<double, 4>, 4>;  // [out][in]

  /// Throws unless every column sums to 1 within `column_tolerance`.
  ProbabilityTable(TableBasis basis_in, TableBasis basis_out, Grid cells,
                   double column_tolerance = 0.01);

  TableBasis basis_in() const { return basis_in_; }
  TableBasis basis_out() const { return basis_out_; }
  const Grid& cells() const { return cells_; }

  /// Throws Error for labels outside the table's bases.
  double at(std::string_view out, std::string_view in) const;
  double column_sum(int in) const;

  /// Long CSV: in_label,out_label,probability (16 rows).
  std::string to_csv_long() const;
  /// Grid CSV: header "out\in,<in labels>", then one row per output label.
  std::string to_csv_grid() const;

  /// Either CSV form; bases are inferred from the labels.
  static ProbabilityTable from_csv(std::string_view text,
                                   double column_tolerance = 0.01);

  /// One line per cell differing by more than `tol`, empty if none.
  std::vector<std::string> diff(const ProbabilityTable& other,
                                double tol) const;

 private:
  TableBasis basis_in_;
  TableBasis basis_out_;
  Grid cells_;
};

/// Printed reference tables: 'a' (HV/HV), 'b' (DA/DA), 'c' (DA-HV/RL).
ProbabilityTable reference_table(char which);

/// Correct-output average in HV. Throws for other bases.
double hofmann_f1(const ProbabilityTable& t);
/// Correct-output average in DA. Throws for other bases.
double hofmann_f2(const ProbabilityTable& t);
/// Eight-term RL-output average over four DA-HV inputs, divided by 4.
double hofmann_f3(const ProbabilityTable& t);

struct ProcessBounds {
  double lo = 0.0;
  double hi = 0.0;
  bool entangling = false;  // lo > 0.5
};

ProcessBounds process_bounds(double f1, double f2);

/// (f1 + f2 + f3) / 3 > 2/3.
bool quantum_parallelism(double f1, double f2, double f3);

struct FidelityReport {
  double f1 = 0.0, f2 = 0.0, f3 = 0.0;
  double proc_lo = 0.0, proc_hi = 0.0;
  double avg_gate = 0.0;
  double bell_f = 0.0;
  bool entangling = false;
  bool parallelism = false;
  /// Set when any estimate falls outside [0, 1]; values are not clamped.
  bool out_of_range = false;
  std::string provenance;
};

FidelityReport fidelity_report(const ProbabilityTable& a,
                               const ProbabilityTable& b,
                               const ProbabilityTable& c, double bell_f,
                               std::string provenance);

/// (P + C) / 2 with C = -(sxx + syy) / 2. Throws for inputs out of range.
double psi_minus_fidelity(double p_pop, double sxx, double syy);

/// (P + C) / 2 with C = (1/N) sum_k (-1)^k <M_{k pi/N}^{(x)N}>.
double ghz_fidelity(int n, double population,
                    const std::vector<double>& correlations);

/// Sum_i w_i |<target|state_i>|^2 / |target|^2.
double ensemble_fidelity(const StateVector& target, const MixedEnsemble& e);

enum class Protocol { F1, F2, F3 };

std::string to_string(Protocol p);
Protocol parse_protocol(std::string_view s);

/// Runs the gate for each of the protocol's four inputs and conditions on
/// the Phi+ herald plus one reported photon at each output analyzer.
/// Throws Error("no heralds") if some input never heralds.
ProbabilityTable simulate_tomography(const Network& net,
                                     const SourceModel& source,
                                     const DetectorModel& det,
                                     Protocol protocol);

struct BellEstimate {
  double population = 0.0;  // P(HV) + P(VH)
  double sxx = 0.0;
  double syy = 0.0;
  double fidelity = 0.0;
};

/// Input |->|V>; HV, DA and RL output analyzers give the population and the
/// two correlators for psi_minus_fidelity.
BellEstimate simulate_bell(const Network& net, const SourceModel& source,
                           const DetectorModel& det);

}  // namespace heraldix
