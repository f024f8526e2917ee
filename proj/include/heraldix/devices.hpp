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

#include <span>
#include <string>
#include <vector>

#include "heraldix/fock.hpp"

namespace heraldix {

/// Lossy on-demand single-photon source. Each photon survives with
/// probability eta_s; its internal wavefunction overlaps the common reference
/// mode by overlap_x (pairwise HOM visibility overlap_x^2).
struct SourceModel {
  double eta_s = 1.0;
  double overlap_x = 1.0;

  void validate() const;
};

enum class DetectorKind { IdealPnrd, Standard, PseudoPnrd };

/// How a binary element responds to j >= 1 photons.
///  - Fixed: clicks with probability eta_d regardless of j (the convention
///    the closed-form heralding expressions are written in).
///  - Physical: clicks with probability 1 - (1 - eta_d)^j.
enum class ClickModel { Fixed, Physical };

std::string to_string(DetectorKind k);
DetectorKind parse_detector_kind(std::string_view s);
std::string to_string(ClickModel c);
ClickModel parse_click_model(std::string_view s);

struct DetectorModel {
  DetectorKind kind = DetectorKind::IdealPnrd;
  double eta_d = 1.0;
  int k = 1;  // binary elements; pseudo-PNRD only
  ClickModel click = ClickModel::Fixed;

  static DetectorModel ideal() { return {}; }
  static DetectorModel standard(double eta_d, ClickModel c = ClickModel::Fixed) {
    return {DetectorKind::Standard, eta_d, 1, c};
  }
  static DetectorModel pseudo(int k, double eta_d,
                              ClickModel c = ClickModel::Fixed) {
    return {DetectorKind::PseudoPnrd, eta_d, k, c};
  }

  /// Largest reportable m.
  int max_reading() const;
  void validate() const;
};

/// P(m | n) for m = 0..max_reading(). Pseudo-PNRDs route the n photons
/// uniformly over k binary elements and report the number of clicking
/// elements; a standard detector is the k = 1 case reporting 0 or 1.
/// Throws Error for n > kMaxPhotons.
std::vector<double> pnrd_response(int n, const DetectorModel& model);

/// Kernel rows n = 0..max_n.
std::vector<std::vector<double>> response_kernel(const DetectorModel& model,
                                                 int max_n = kMaxPhotons);

/// Source photon description for an ensemble.
struct SourceSpec {
  Path path{};
  Jones pol = jones::H();
};

/// Mixture over which photons survived: 2^N branches, subset S with weight
/// eta_s^|S| (1 - eta_s)^(N - |S|). Photon i (1-based) owns private
/// internal label i. Zero-weight branches are dropped.
MixedEnsemble source_ensemble(std::span<const SourceSpec> specs,
                              const SourceModel& model,
                              double tolerance = kDefaultTolerance);

/// Survival mask of each branch of source_ensemble, in the same order
/// (bit i set if photon i is present).
std::vector<unsigned> source_ensemble_masks(std::size_t n_sources,
                                            const SourceModel& model);

}  // namespace heraldix
