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

#include "heraldix/reproduce.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "heraldix/demux.hpp"
#include "heraldix/error.hpp"
#include "heraldix/fidelity.hpp"
#include "heraldix/herald.hpp"
#include "heraldix/network.hpp"
#include "heraldix/parallel.hpp"
#include "heraldix/scenario.hpp"

namespace heraldix {

namespace {

using Qubits = std::array<Complex, 4>;

std::vector<Qubits> random_inputs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Qubits> out;
  for (std::size_t i = 0; i < n; ++i) {
    Qubits q;
    for (auto& c : q) c = {g(rng), g(rng)};
    const double n1 = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
    const double n2 = std::sqrt(std::norm(q[2]) + std::norm(q[3]));
    q[0] /= n1;
    q[1] /= n1;
    q[2] /= n2;
    q[3] /= n2;
    out.push_back(q);
  }
  return out;
}

std::string num(double x) { return format_number(x); }

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read golden file " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CheckResult check(std::string id, std::string title, bool pass,
                  std::string detail) {
  return {std::move(id), std::move(title), pass, std::move(detail)};
}

std::vector<PhotonSpec> photon_specs(const Qubits& q) {
  std::vector<PhotonSpec> specs;
  for (const auto& s : gate_sources(q[0], q[1], q[2], q[3])) {
    specs.push_back({s.path, s.pol});
  }
  return specs;
}

// ------------------------------------------------------------ the items

CheckResult truth_table() {
  const auto t = simulate_tomography(heralded_cnot_network(), SourceModel{},
                                     DetectorModel::ideal(), Protocol::F1);
  const int target[4] = {0, 1, 3, 2};  // HH->HH, HV->HV, VH->VV, VV->VH
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int o = 0; o < 4; ++o) {
      const double want = o == target[i] ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(t.cells()[o][i] - want));
    }
  }
  return check("1", "ideal heralded truth table is the CNOT table", worst < 1e-10,
               "max deviation " + num(worst));
}

CheckResult success_probability() {
  const auto net = heralded_cnot_network();
  double worst = 0.0;
  std::string values;
  auto inputs = random_inputs(4, 11);
  inputs.insert(inputs.begin(), Qubits{M_SQRT1_2, M_SQRT1_2, 1.0, 0.0});
  for (const auto& q : inputs) {
    const auto ens = source_ensemble(gate_sources(q[0], q[1], q[2], q[3]), SourceModel{});
    const double p = probability_of(outcome_distribution(net, ens, DetectorModel::ideal()),
                                    is_herald);
    worst = std::max(worst, std::abs(p - 0.125));
    if (values.empty()) values = num(p);
  }
  return check("2", "ideal heralded coincidence probability is 1/8", worst < 1e-12,
               "P(|+>|H>) = " + values + ", max |P - 1/8| over 5 inputs " + num(worst));
}

CheckResult feed_forward() {
  Network head;
  const auto full = heralded_cnot_network();
  head.add(full.specs()[0]);
  head.add(full.specs()[1]);
  const std::vector<Path> inner{paths::p2, paths::p3};
  double worst = 1.0;
  const auto inputs = random_inputs(128, 7);
  for (const auto& q : inputs) {
    const auto specs = photon_specs(q);
    const StateVector mid = propagate(head, make_product_input(specs));
    const StateVector one_each = project_photon_counts(
        mid, {{paths::p1, 1}, {paths::p2, 1}, {paths::p3, 1}, {paths::p4, 1}});
    const StateVector want = cnot_reference(q[0], q[1], q[2], q[3]);
    for (BellState b : kBellStates) {
      StateVector out = project_onto(bell_state(b, paths::p2, paths::p3), one_each, inner);
      out = apply_all(pauli_correction(b), out);
      worst = std::min(worst, fidelity(want, out));
    }
  }
  return check("3", "Pauli-corrected output equals U_CNOT|psi> for all four Bell outcomes",
               worst >= 1.0 - 1e-10,
               "min fidelity " + num(worst) + " over " + std::to_string(inputs.size()) +
                   " random inputs x 4 outcomes");
}

double cross_port_probability(const StateVector& injected) {
  const std::vector<Path> inner{paths::p2, paths::p3};
  const Network tail = heralded_cnot_network().downstream_of(inner);
  const auto dist = outcome_distribution(tail, MixedEnsemble::pure(injected),
                                         DetectorModel::ideal());
  return probability_of(dist, [](const ClickPattern& p) {
    return p.at("D_H1") + p.at("D_V1") >= 1 && p.at("D_H2") + p.at("D_V2") >= 1;
  });
}

CheckResult bunching() {
  const StateVector hv = create_photon(
      create_photon(StateVector::vacuum(), paths::p2, jones::H()), paths::p2, jones::V());
  const StateVector pm = create_photon(
      create_photon(StateVector::vacuum(), paths::p3, jones::plus()), paths::p3,
      jones::minus());
  const double a = cross_port_probability(hv);
  const double b = cross_port_probability(pm);
  return check("4", "|H>|V> or |+>|-> on one PBS3 input gives no cross-port coincidence",
               a < 1e-14 && b < 1e-14, "HV on 2: " + num(a) + ", +- on 3: " + num(b));
}

CheckResult pseudo_table() {
  const auto r = pnrd_response(2, DetectorModel::pseudo(4, 0.8));
  const bool ok = std::abs(r[2] - 0.48) < 1e-15 && std::abs(r[1] - 0.44) < 1e-15 &&
                  std::abs(r[0] - 0.08) < 1e-15;
  return check("5", "pseudo-PNRD k=4, eta_d=0.8: P(2|2), P(1|2), P(0|2) = 0.48, 0.44, 0.08",
               ok, "got " + num(r[2]) + ", " + num(r[1]) + ", " + num(r[0]));
}

CheckResult herald_forms(unsigned jobs) {
  std::ostringstream d;
  bool ok = true;
  const struct {
    const char* kind;
    double printed;
  } printed[] = {{"ide", 0.00915}, {"pse", 0.00875}, {"sta", 0.00857}};
  for (const auto& p : printed) {
    const double v = eta_h_closed_form(p.kind, 0.175);
    const bool good = std::abs(v - p.printed) <= 5e-5;
    ok = ok && good;
    d << p.kind << "(0.175)=" << num(v) << (good ? "" : " [off]") << "; ";
  }

  const auto inputs = random_inputs(20, 23);
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.1 * i);
  const DetectorModel dets[3] = {DetectorModel::ideal(), DetectorModel::pseudo(4, 0.8),
                                 DetectorModel::standard(0.8)};
  struct Worst {
    std::map<std::string, double> printed, coherent;
  };
  const std::size_t n = inputs.size() * grid.size() * 3;
  auto rows = parallel_map<Worst>(n, jobs, [&](std::size_t i) {
    const auto& q = inputs[i % inputs.size()];
    const double eta = grid[(i / inputs.size()) % grid.size()];
    const auto& det = dets[i / (inputs.size() * grid.size())];
    const auto bf = herald_budget_bruteforce(q[0], q[1], q[2], q[3], eta, det);
    const auto cf = p2_terms_closed_form(q[0], q[1], q[2], q[3], eta, det);
    const auto co = p2_terms_closed_form(q[0], q[1], q[2], q[3], eta, det, P244Form::Coherent);
    Worst w;
    for (const auto& name : kP2TermNames) {
      w.printed[name] = std::abs(bf.p2_terms.at(name) - cf.p2_terms.at(name));
      w.coherent[name] = std::abs(bf.p2_terms.at(name) - co.p2_terms.at(name));
    }
    w.printed["p4"] = std::abs(bf.p4 - cf.p4);
    return w;
  });
  std::map<std::string, double> worst_printed, worst_coherent;
  for (const auto& w : rows) {
    for (const auto& [k, v] : w.printed) worst_printed[k] = std::max(worst_printed[k], v);
    for (const auto& [k, v] : w.coherent) worst_coherent[k] = std::max(worst_coherent[k], v);
  }
  std::vector<std::string> bad;
  for (const auto& [k, v] : worst_printed) {
    if (v > 1e-10) bad.push_back(k);
  }
  d << "brute force vs printed closed forms over 10 eta_s x 20 inputs x 3 detectors: ";
  if (bad.empty()) {
    d << "all terms within 1e-10";
  } else {
    ok = false;
    for (const auto& k : bad) d << k << " max diff " << num(worst_printed[k]) << " ";
    d << "(coherent P_2-4-4 max diff " << num(worst_coherent["P_2-4-4"])
      << "; see P244Form)";
  }
  return check("6", "heralding efficiencies and closed forms vs exact enumeration", ok, d.str());
}

struct Tables {
  ProbabilityTable a, b, c;
};

CheckResult golden_tables(const std::string& dir, std::optional<Tables>& out) {
  std::vector<std::string> problems;
  std::vector<ProbabilityTable> loaded;
  const char which[3] = {'a', 'b', 'c'};
  for (int i = 0; i < 3; ++i) {
    const auto path = std::filesystem::path(dir) / kGoldenTableFiles[i];
    if (!std::filesystem::exists(path)) {
      throw ConfigError("missing golden file " + path.string());
    }
    const std::string text = read_file(path);
    try {
      auto t = ProbabilityTable::from_csv(text);
      for (const auto& line : reference_table(which[i]).diff(t, 1e-12)) {
        problems.push_back(std::string(kGoldenTableFiles[i]) + ": " + line);
      }
      loaded.push_back(std::move(t));
    } catch (const Error& e) {
      problems.push_back(std::string(kGoldenTableFiles[i]) + ": " + e.what());
    }
  }
  if (problems.empty()) out = Tables{loaded[0], loaded[1], loaded[2]};
  std::string detail;
  for (const auto& p : problems) detail += (detail.empty() ? "" : "; ") + p;
  return check("golden", "golden table files match the reference cells", problems.empty(),
               problems.empty() ? "3 files, 48 cells" : detail);
}

CheckResult table_fidelities(const std::optional<Tables>& t) {
  if (!t) return check("7", "Hofmann fidelities from the golden tables", false, "golden tables unusable");
  const auto r = fidelity_report(t->a, t->b, t->c, 0.0, "golden tables");
  const struct {
    const char* name;
    double value, want;
  } items[] = {{"F1", r.f1, 0.8775},        {"F2", r.f2, 0.8860},
               {"F3", r.f3, 0.8677},        {"lo", r.proc_lo, 0.7635},
               {"hi", r.proc_hi, 0.8775},   {"avg", r.avg_gate, 0.8771}};
  bool ok = true;
  std::ostringstream d;
  for (const auto& it : items) {
    const bool good = std::abs(it.value - it.want) <= 5e-4;
    ok = ok && good;
    d << it.name << "=" << num(it.value) << (good ? " " : " [off] ");
  }
  d << "entangling=" << (r.entangling ? "yes" : "no")
    << " parallelism=" << (r.parallelism ? "yes" : "no");
  ok = ok && r.entangling && r.parallelism;
  return check("7", "Hofmann fidelities, process bounds and average from the golden tables", ok, d.str());
}

CheckResult bell_fidelity() {
  const double f = psi_minus_fidelity(0.8729, -0.8039, -0.7875);
  return check("8", "Bell-state fidelity from (0.8729, -0.8039, -0.7875)",
               std::abs(f - 0.83425) <= 1e-4, "F = " + num(f));
}

CheckResult swapping() {
  using namespace paths;
  const StateVector s = tensor_product(bell_state(BellState::PhiPlus, p1, p2),
                                       bell_state(BellState::PhiPlus, p3, p4));
  double worst = 0.0;
  double captured = 0.0;
  std::ostringstream d;
  for (BellState b : kBellStates) {
    const StateVector pair = tensor_product(bell_state(b, p1, p4), bell_state(b, p2, p3));
    const Complex c = inner_product(pair, s);
    worst = std::max(worst, std::abs(c - 0.5));
    captured += std::norm(c);
    d << to_string(b) << ":" << num(c.real()) << " ";
  }
  d << "captured norm " << num(captured);
  return check("9", "|Phi+>12|Phi+>34 = 1/2 sum_B |B>14|B>23",
               worst < 1e-12 && std::abs(captured - 1.0) < 1e-12, d.str());
}

CheckResult demux() {
  DemuxConfig cfg;
  cfg.eta_f = 0.263;
  cfg.eta_w = 0.83;
  cfg.eta_l = 0.80;
  const auto s = schedule(cfg, 100);
  std::array<int, 4> per{};
  for (int c : s) per[static_cast<std::size_t>(c - 1)]++;
  const double eta = efficiency_budget(cfg);
  const bool ok = per == std::array<int, 4>{25, 25, 25, 25} && std::abs(eta - 0.17463) < 5e-6;
  return check("10", "demux: 25 pulses per channel per 100; eta_s = eta_f eta_w eta_l", ok,
               "counts " + std::to_string(per[0]) + "/" + std::to_string(per[1]) + "/" +
                   std::to_string(per[2]) + "/" + std::to_string(per[3]) + ", eta_s " + num(eta));
}

CheckResult properties() {
  std::ostringstream d;
  bool ok = true;

  double unit = 0.0;
  const auto net = heralded_cnot_network();
  for (const auto& m : net.elements()) {
    unit = std::max(unit, m.unitarity_error());
  }
  for (int i = 0; i < 16; ++i) {
    const double th = 0.39 * i;
    unit = std::max(unit, waveplate(WaveplateKind::Half, th, paths::p1).unitarity_error());
    unit = std::max(unit, waveplate(WaveplateKind::Quarter, th, paths::p1).unitarity_error());
  }
  ok = ok && unit < 1e-12;
  d << "unitarity " << num(unit) << "; ";

  double cons = 0.0;
  for (const auto& q : random_inputs(3, 5)) {
    const auto ens = source_ensemble(gate_sources(q[0], q[1], q[2], q[3]),
                                     SourceModel{0.6, 0.9});
    const auto dist = outcome_distribution(net, ens, DetectorModel::pseudo(4, 0.8));
    double total = 0.0;
    for (const auto& [_, e] : dist) total += e.probability;
    cons = std::max(cons, std::abs(total - ens.total_weight()));
  }
  ok = ok && cons < 1e-10;
  d << "probability conservation " << num(cons) << "; ";

  double stoch = 0.0;
  for (ClickModel cm : {ClickModel::Fixed, ClickModel::Physical}) {
    for (double eta : {0.0, 0.3, 0.8, 1.0}) {
      std::vector<DetectorModel> models{DetectorModel::ideal(), DetectorModel::standard(eta, cm)};
      for (int k = 1; k <= 8; ++k) models.push_back(DetectorModel::pseudo(k, eta, cm));
      for (const auto& m : models) {
        for (const auto& row : response_kernel(m)) {
          double s = 0.0;
          for (double v : row) s += v;
          stoch = std::max(stoch, std::abs(s - 1.0));
        }
      }
    }
  }
  ok = ok && stoch < 1e-12;
  d << "kernel stochasticity " << num(stoch) << "; ";

  bool mono = true;
  for (const char* kind : {"ide", "pse", "sta"}) {
    double prev = -1.0;
    for (int i = 1; i <= 100; ++i) {
      const double v = eta_h_closed_form(kind, 0.01 * i);
      mono = mono && v > prev;
      prev = v;
    }
  }
  double prev = -1.0;
  for (int i = 1; i <= 10; ++i) {
    const double v = herald_budget_bruteforce(M_SQRT1_2, M_SQRT1_2, 1.0, 0.0, 0.1 * i,
                                              DetectorModel::pseudo(4, 0.8))
                         .eta_h;
    mono = mono && v > prev;
    prev = v;
  }
  ok = ok && mono;
  d << "eta_h monotone in eta_s " << (mono ? "yes" : "no");
  return check("11", "property suites", ok, d.str());
}

// -------------------------------------------------------- printed numbers

CheckResult printed(const std::string& name, double computed, double value,
                    int decimals, double tolerance) {
  const double slack = 0.5 * std::pow(10.0, -decimals) + tolerance;
  const double diff = std::abs(computed - value);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return check("printed:" + name, name + " vs printed " + buf, diff <= slack * (1 + 1e-12),
               "computed " + num(computed) + ", |diff| " + num(diff) + ", allowed " +
                   num(slack));
}

}  // namespace

std::vector<CheckResult> reproduce_paper(const ReproduceOptions& opts) {
  const unsigned jobs = std::max(1u, opts.jobs);
  std::vector<CheckResult> out;
  std::optional<Tables> tables;
  out.push_back(golden_tables(opts.golden_dir, tables));
  out.push_back(truth_table());
  out.push_back(success_probability());
  out.push_back(feed_forward());
  out.push_back(bunching());
  out.push_back(pseudo_table());
  out.push_back(herald_forms(jobs));
  out.push_back(table_fidelities(tables));
  out.push_back(bell_fidelity());
  out.push_back(swapping());
  out.push_back(demux());
  out.push_back(properties());

  const double tol = opts.tolerance;
  DemuxConfig cfg;
  cfg.eta_f = 0.263;
  cfg.eta_w = 0.83;
  cfg.eta_l = 0.80;
  const double eta_s = efficiency_budget(cfg);
  out.push_back(printed("eta_s", eta_s, 0.175, 3, tol));
  out.push_back(printed("P_success", probability_of(
                    outcome_distribution(heralded_cnot_network(),
                                         source_ensemble(gate_sources(M_SQRT1_2, M_SQRT1_2, 1.0, 0.0),
                                                         SourceModel{}),
                                         DetectorModel::ideal()),
                    is_herald), 0.125, 3, tol));
  out.push_back(printed("P(1|2|4)", pnrd_response(2, DetectorModel::pseudo(4, 0.8))[1], 0.44,
                        2, tol));
  out.push_back(printed("eta_h_ide", eta_h_closed_form("ide", eta_s), 0.00915, 5, tol));
  out.push_back(printed("eta_h_pse", eta_h_closed_form("pse", eta_s), 0.00875, 5, tol));
  out.push_back(printed("eta_h_sta", eta_h_closed_form("sta", eta_s), 0.00857, 5, tol));
  if (tables) {
    const auto r = fidelity_report(tables->a, tables->b, tables->c,
                                   psi_minus_fidelity(0.8729, -0.8039, -0.7875), "golden tables");
    out.push_back(printed("F1", r.f1, 0.878, 3, tol));
    out.push_back(printed("F2", r.f2, 0.886, 3, tol));
    out.push_back(printed("F3", r.f3, 0.870, 3, tol));
    out.push_back(printed("F_proc_lo", r.proc_lo, 0.764, 3, tol));
    out.push_back(printed("F_proc_hi", r.proc_hi, 0.878, 3, tol));
    out.push_back(printed("F_avg", r.avg_gate, 0.878, 3, tol));
    out.push_back(printed("F_bell", r.bell_f, 0.834, 3, tol));
  }
  return out;
}

}  // namespace heraldix
