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

#include "heraldix/herald.hpp"

#include <bit>
#include <cmath>

#include "heraldix/error.hpp"

namespace heraldix {

namespace {

int reading(const ClickPattern& p, const char* id) {
  auto it = p.find(id);
  return it == p.end() ? 0 : it->second;
}

void check_qubit(Complex a, Complex b) {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-9) {
    throw Error("input qubit not normalized");
  }
}

void check_eta(double eta_s) {
  if (!(eta_s >= 0.0 && eta_s <= 1.0)) throw Error("eta_s outside [0, 1]");
}

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

std::string to_string(CaseGroup g) {
  switch (g) {
    case CaseGroup::One: return "1";
    case CaseGroup::Two: return "2";
    case CaseGroup::Three: return "3";
    case CaseGroup::Loss: return "loss";
  }
  return "loss";
}

CaseLabel classify_case(const std::array<int, 4>& c) {
  CaseLabel label{c, CaseGroup::Loss};
  int total = 0;
  for (int n : c) {
    if (n < 0) throw Error("negative photon count");
    total += n;
  }
  if (total < 4) return label;
  const bool pbs1_ok = c[0] + c[1] == 2;
  const bool pbs2_ok = c[2] + c[3] == 2;
  if (total != 4 || !pbs1_ok || !pbs2_ok) {
    throw Error("photon numbers are not a two-per-PBS case");
  }
  if (c == std::array{1, 1, 1, 1}) {
    label.group = CaseGroup::One;
  } else if (c == std::array{2, 0, 2, 0} || c == std::array{0, 2, 0, 2}) {
    label.group = CaseGroup::Two;
  } else {
    label.group = CaseGroup::Three;
  }
  return label;
}

double HeraldBudget::p2() const {
  double s = 0.0;
  for (const auto& [_, v] : p2_terms) s += v;
  return s;
}

bool is_herald(const ClickPattern& p) {
  return reading(p, "D_H1") + reading(p, "D_V1") == 1 &&
         reading(p, "D_H2") + reading(p, "D_V2") == 1;
}

bool is_phi_plus_herald(const ClickPattern& p) {
  if (!is_herald(p)) return false;
  return reading(p, "D_H1") == reading(p, "D_H2");
}

HeraldConstants herald_constants(const DetectorModel& det) {
  const auto r1 = pnrd_response(1, det);
  const auto r2 = pnrd_response(2, det);
  return {r1.size() > 1 ? r1[1] : 0.0, r2.size() > 1 ? r2[1] : 0.0, r1[0]};
}

HeraldBudget p2_terms_closed_form(Complex alpha, Complex beta, Complex gamma,
                                  Complex delta, double eta_s,
                                  const DetectorModel& det, P244Form form) {
  check_qubit(alpha, beta);
  check_qubit(gamma, delta);
  check_eta(eta_s);
  const auto [p11, p12, p01] = herald_constants(det);
  const double e = eta_s;
  const double l = 1.0 - eta_s;
  const double a2 = std::norm(alpha);
  const double gd2 = std::norm(gamma + delta);
  const double agd2 = std::norm(alpha * (gamma + delta));
  const double A = p12 * p11 + 2.0 * p01 * p11 * p11;
  const double B = p12 + 2.0 * p01 * p11;

  HeraldBudget b;
  b.p2_terms["P_2-4-2"] = std::pow(e, 4) * p11 * p11 / 8.0;
  b.p2_terms["P_2-4-3"] = std::pow(e, 4) / 32.0 * A * (gd2 + 2.0 * a2);
  b.p2_terms["P_2-4-4"] = form == P244Form::Printed
                              ? std::pow(e, 4) / 64.0 * B * B * agd2
                              : std::pow(e, 4) / 8.0 * p12 * p01 * p11 * agd2;
  b.p2_terms["P_2-3-2"] = std::pow(e, 3) * l * p11 * p11 / 8.0 * (2.0 * a2 + gd2 + 2.0);
  b.p2_terms["P_2-3-3"] =
      std::pow(e, 3) * l / 32.0 * A * ((4.0 * a2 + 1.0) * gd2 + 2.0 * a2);
  b.p2_terms["P_2-2"] = e * e * l * l * p11 * p11 / 8.0 *
                        (2.0 * agd2 + 2.0 * a2 + gd2 + 1.0);
  b.p4 = b.p2_terms["P_2-4-2"];
  b.eta_h = ratio(b.p4, b.p2());
  return b;
}

double eta_h_closed_form(const DetectorModel& det, double eta_s) {
  check_eta(eta_s);
  const auto [p11, p12, p01] = herald_constants(det);
  if (p11 == 0.0) return 0.0;
  const double c = 1.0 - (p12 + 2.0 * p01 * p11) / (4.0 * p11);
  const double den = (2.0 - c * eta_s) * (2.0 - c * eta_s);
  return ratio(eta_s * eta_s, den);
}

DetectorModel detector_for_kind(std::string_view kind, double eta_d) {
  switch (parse_detector_kind(kind)) {
    case DetectorKind::IdealPnrd: return DetectorModel::ideal();
    case DetectorKind::PseudoPnrd: return DetectorModel::pseudo(4, eta_d);
    case DetectorKind::Standard: return DetectorModel::standard(eta_d);
  }
  return DetectorModel::ideal();
}

double eta_h_closed_form(std::string_view kind, double eta_s, double eta_d) {
  return eta_h_closed_form(detector_for_kind(kind, eta_d), eta_s);
}

namespace {

// PBS1 and PBS2 only.
Network gate_head() {
  Network head;
  const auto full = heralded_cnot_network(true);
  head.add(full.specs()[0]);
  head.add(full.specs()[1]);
  return head;
}

Network gate_tail() {
  const std::vector<Path> inner{paths::p2, paths::p3};
  return heralded_cnot_network(true).downstream_of(inner);
}

// Splits a state by the photon number on paths 2, 3.
std::map<int, StateVector> split_by_inner_count(const StateVector& s) {
  std::map<int, StateVector> out;
  for (const auto& [f, a] : s.terms()) {
    const int j = f.path_count(paths::p2) + f.path_count(paths::p3);
    out.try_emplace(j, s.tolerance()).first->second.add(f, a);
  }
  for (auto& [_, v] : out) v.prune();
  return out;
}

double herald_probability(const Network& tail, const StateVector& s,
                          const DetectorModel& det) {
  if (s.is_zero()) return 0.0;
  const auto dist = outcome_distribution(tail, MixedEnsemble::pure(s), det);
  return probability_of(dist, is_herald);
}

std::string term_name(int n, int j) {
  if (n == 2 && j == 2) return "P_2-2";
  return "P_2-" + std::to_string(n) + "-" + std::to_string(j);
}

}  // namespace

HeraldBudget herald_budget_bruteforce(Complex alpha, Complex beta,
                                      Complex gamma, Complex delta,
                                      double eta_s, const DetectorModel& det) {
  check_qubit(alpha, beta);
  check_qubit(gamma, delta);
  const SourceModel model{eta_s, 1.0};
  const auto specs = gate_sources(alpha, beta, gamma, delta);
  const auto ensemble = source_ensemble(specs, model);
  const auto masks = source_ensemble_masks(specs.size(), model);
  const Network head = gate_head();
  const Network tail = gate_tail();

  HeraldBudget b;
  for (const auto& name : kP2TermNames) b.p2_terms[name] = 0.0;
  for (std::size_t i = 0; i < ensemble.branches().size(); ++i) {
    const auto& br = ensemble.branches()[i];
    const int n = std::popcount(masks[i]);
    const StateVector mid = propagate(head, br.state);
    for (const auto& [j, part] : split_by_inner_count(mid)) {
      const double p = br.weight * herald_probability(tail, part, det);
      if (p == 0.0) continue;
      b.p2_terms[term_name(n, j)] += p;
    }
    if (n == 4) {
      const StateVector group1 = project_photon_counts(
          mid, {{paths::p1, 1}, {paths::p2, 1}, {paths::p3, 1}, {paths::p4, 1}});
      b.p4 = br.weight * herald_probability(tail, group1, det);
    }
  }
  b.eta_h = ratio(b.p4, b.p2());
  return b;
}

std::map<std::array<int, 4>, double> herald_probability_by_case(
    Complex alpha, Complex beta, Complex gamma, Complex delta,
    const DetectorModel& det) {
  check_qubit(alpha, beta);
  check_qubit(gamma, delta);
  const auto specs = gate_sources(alpha, beta, gamma, delta);
  const auto ensemble = source_ensemble(specs, SourceModel{});
  const StateVector mid = propagate(gate_head(), ensemble.branches().front().state);
  const Network tail = gate_tail();
  const std::vector<Path> ps{paths::p1, paths::p2, paths::p3, paths::p4};
  std::map<std::array<int, 4>, double> out;
  for (const auto& [counts, _] : path_count_distribution(mid, ps)) {
    std::array<int, 4> c{counts[0], counts[1], counts[2], counts[3]};
    const StateVector part = project_photon_counts(
        mid, {{paths::p1, c[0]}, {paths::p2, c[1]}, {paths::p3, c[2]}, {paths::p4, c[3]}});
    out[c] = herald_probability(tail, part, det);
  }
  return out;
}

}  // namespace heraldix
