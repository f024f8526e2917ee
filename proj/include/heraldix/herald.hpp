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
#include <map>
#include <string>
#include <vector>

#include "heraldix/devices.hpp"
#include "heraldix/network.hpp"

namespace heraldix {

enum class CaseGroup { One = 1, Two = 2, Three = 3, Loss = 0 };

std::string to_string(CaseGroup g);

/// Photon numbers on paths 1..4 just after PBS1 and PBS2.
struct CaseLabel {
  std::array<int, 4> counts{};
  CaseGroup group = CaseGroup::Loss;
};

/// Group 1: (1,1,1,1). Group 2: (2,0,2,0), (0,2,0,2). Group 3: the other
/// six four-photon patterns reachable with two photons per PBS. Fewer than
/// four photons: Loss. Throws Error for four or more photons in any other
/// arrangement.
CaseLabel classify_case(const std::array<int, 4>& counts);

/// Names of the two-fold coincidence terms: P_2-N-j has N photons surviving
/// and j of them on paths 2, 3 (P_2-2 is N = j = 2).
inline const std::array<std::string, 6> kP2TermNames{
    "P_2-4-2", "P_2-4-3", "P_2-4-4", "P_2-3-2", "P_2-3-3", "P_2-2"};

struct HeraldBudget {
  double p4 = 0.0;
  std::map<std::string, double> p2_terms;
  double eta_h = 0.0;

  double p2() const;
};

/// Two-fold herald: exactly one reported photon among D_H1, D_V1 and exactly
/// one among D_H2, D_V2.
bool is_herald(const ClickPattern& p);

/// The subset of heralds signalling Phi+ with no feed-forward: D_H1 & D_H2
/// or D_V1 & D_V2.
bool is_phi_plus_herald(const ClickPattern& p);

/// Detector probabilities entering the closed forms.
struct HeraldConstants {
  double p11 = 1.0;  // P(1|1)
  double p12 = 0.0;  // P(1|2)
  double p01 = 0.0;  // P(0|1)
};

HeraldConstants herald_constants(const DetectorModel& det);

/// Which expression to use for P_2-4-4.
///  - Printed: (eta_s^4 / 64) (P(1|2) + 2 P(0|1) P(1|1))^2 |alpha(gamma+delta)|^2,
///    which treats the two bunched pairs as landing independently.
///  - Coherent: eta_s^4 P(1|2) P(0|1) P(1|1) |alpha(gamma+delta)|^2 / 8. The
///    two pairs interfere after PBS3 so that one arm always holds both photons
///    in one detector and the other arm one photon per detector. The two
///    differ by eta_s^4 |alpha(gamma+delta)|^2 (P(1|2) - 2 P(0|1) P(1|1))^2 / 64.
enum class P244Form { Printed, Coherent };

/// Closed-form P_2 terms for input alpha|H>+beta|V> (control),
/// gamma|H>+delta|V> (target). P4 = eta_s^4 P(1|1)^2 / 8 = P_2-4-2.
/// Throws Error for non-normalized inputs or eta_s outside [0, 1].
HeraldBudget p2_terms_closed_form(Complex alpha, Complex beta, Complex gamma,
                                  Complex delta, double eta_s,
                                  const DetectorModel& det,
                                  P244Form form = P244Form::Printed);

/// eta_h for the |+>|H> input: eta_s^2 / (2 - c eta_s)^2 with
/// c = 1 - (P(1|2) + 2 P(0|1) P(1|1)) / (4 P(1|1)). 0/0 is reported as 0.
double eta_h_closed_form(const DetectorModel& det, double eta_s);

/// Shorthand kinds "ide", "pse" (k = 4) and "sta" at element efficiency eta_d.
double eta_h_closed_form(std::string_view kind, double eta_s,
                         double eta_d = 0.8);

/// Detector model for the shorthand kinds above.
DetectorModel detector_for_kind(std::string_view kind, double eta_d = 0.8);

/// Exact enumeration: every source-survival branch is propagated through
/// PBS1/PBS2, split by the photon number j on paths 2, 3, then through the
/// Bell analyzer with the detector kernels. p4 is computed separately from
/// the (1,1,1,1) projection of the full-survival branch.
HeraldBudget herald_budget_bruteforce(Complex alpha, Complex beta,
                                      Complex gamma, Complex delta,
                                      double eta_s, const DetectorModel& det);

/// Per-case herald probabilities of the full-survival branch, keyed by the
/// post-PBS photon numbers.
std::map<std::array<int, 4>, double> herald_probability_by_case(
    Complex alpha, Complex beta, Complex gamma, Complex delta,
    const DetectorModel& det);

}  // namespace heraldix
