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

#include "heraldix/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "heraldix/error.hpp"
#include "json.hpp"

namespace heraldix {

using nlohmann::json;

// ---------------------------------------------------------------- elements

ElementSpec ElementSpec::pbs(BasisName b, Path in_a, Path in_b, Path out_t,
                             Path out_r) {
  ElementSpec e;
  e.kind = Kind::Pbs;
  e.basis = b;
  e.paths = {in_a, in_b, out_t, out_r};
  return e;
}

ElementSpec ElementSpec::hwp(double angle_deg, Path p) {
  ElementSpec e;
  e.kind = Kind::HalfWave;
  e.angle_deg = angle_deg;
  e.paths = {p};
  return e;
}

ElementSpec ElementSpec::qwp(double angle_deg, Path p) {
  ElementSpec e = hwp(angle_deg, p);
  e.kind = Kind::QuarterWave;
  return e;
}

ModeLinearMap ElementSpec::build() const {
  if (kind == Kind::Pbs) {
    if (paths.size() != 4) throw Error("pbs needs four path labels");
    const PolarizationBasis b = basis == BasisName::Custom
                                    ? (custom ? *custom
                                              : throw Error("custom basis needs explicit vectors"))
                                    : PolarizationBasis::named(basis);
    return heraldix::pbs(b, paths[0], paths[1], paths[2], paths[3]);
  }
  if (paths.size() != 1) throw Error("wave-plate needs one path label");
  const auto wk = kind == Kind::HalfWave ? WaveplateKind::Half : WaveplateKind::Quarter;
  return waveplate(wk, angle_deg * M_PI / 180.0, paths[0]);
}

std::string to_string(ElementSpec::Kind k) {
  switch (k) {
    case ElementSpec::Kind::Pbs: return "pbs";
    case ElementSpec::Kind::HalfWave: return "hwp";
    case ElementSpec::Kind::QuarterWave: return "qwp";
  }
  return "pbs";
}

std::string to_string(const ClickPattern& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [id, m] : p) {
    if (m == 0) continue;
    if (!first) os << '&';
    os << id;
    if (m > 1) os << 'x' << m;
    first = false;
  }
  return first ? std::string("none") : os.str();
}

// ----------------------------------------------------------------- Network

void Network::add(ElementSpec spec) {
  maps_.push_back(spec.build());
  specs_.push_back(std::move(spec));
}

void Network::set_analyzer(Path path, Analyzer analyzer) {
  if (analyzer.detector_t.empty() || analyzer.detector_r.empty() ||
      analyzer.detector_t == analyzer.detector_r) {
    throw Error("analyzer needs two distinct detector ids");
  }
  for (const auto& [p, a] : analyzers_) {
    if (p == path) continue;
    for (const auto& id : {a.detector_t, a.detector_r}) {
      if (id == analyzer.detector_t || id == analyzer.detector_r) {
        throw Error("detector id '" + id + "' already in use");
      }
    }
  }
  analyzers_.insert_or_assign(path, std::move(analyzer));
}

std::vector<std::string> Network::detectors() const {
  std::vector<std::string> ids;
  for (const auto& [p, a] : analyzers_) {
    ids.push_back(a.detector_t);
    ids.push_back(a.detector_r);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::pair<Path, int> Network::detector_port(const std::string& id) const {
  for (const auto& [p, a] : analyzers_) {
    if (a.detector_t == id) return {p, 0};
    if (a.detector_r == id) return {p, 1};
  }
  throw Error("unknown detector '" + id + "'");
}

Network Network::downstream_of(std::span<const Path> ps) const {
  Network out;
  out.analyzers_ = analyzers_;
  bool started = false;
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (!started) {
      for (const auto& m : maps_[i].domain()) {
        if (std::find(ps.begin(), ps.end(), m.path) != ps.end()) started = true;
      }
    }
    if (started) out.add(specs_[i]);
  }
  return out;
}

Network Network::without_elements(std::span<const std::size_t> drop) const {
  Network out;
  out.analyzers_ = analyzers_;
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (std::find(drop.begin(), drop.end(), i) == drop.end()) out.add(specs_[i]);
  }
  return out;
}

namespace {

constexpr const char* kNetworkSchema = "heraldix.network/1";

json jones_to_json(const Jones& j) {
  return json::array({json::array({j[0].real(), j[0].imag()}),
                      json::array({j[1].real(), j[1].imag()})});
}

Jones jones_from_json(const json& v) {
  if (!v.is_array() || v.size() != 2) throw Error("Jones vector needs two entries");
  Jones j;
  for (std::size_t i = 0; i < 2; ++i) {
    if (!v[i].is_array() || v[i].size() != 2) throw Error("complex entry needs [re, im]");
    j[i] = {v[i][0].get<double>(), v[i][1].get<double>()};
  }
  return j;
}

json basis_to_json(const PolarizationBasis& b) {
  if (b.name() != BasisName::Custom) return to_string(b.name());
  return json{{"transmitted", jones_to_json(b.transmitted())},
              {"reflected", jones_to_json(b.reflected())}};
}

PolarizationBasis basis_from_json(const json& v) {
  if (v.is_string()) return PolarizationBasis::named(parse_basis_name(v.get<std::string>()));
  if (!v.is_object()) throw Error("basis must be a name or an object");
  for (const auto& [k, _] : v.items()) {
    if (k != "transmitted" && k != "reflected") throw Error("unknown basis key '" + k + "'");
  }
  return {jones_from_json(v.at("transmitted")), jones_from_json(v.at("reflected"))};
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const char* where) {
  for (const auto& [k, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw Error(std::string("unknown key '") + k + "' in " + where);
  }
}

}  // namespace

std::string Network::to_json() const {
  json elems = json::array();
  for (const auto& s : specs_) {
    json e{{"kind", to_string(s.kind)}};
    json ps = json::array();
    for (Path p : s.paths) ps.push_back(path_name(p));
    if (s.kind == ElementSpec::Kind::Pbs) {
      e["basis"] = s.basis == BasisName::Custom ? basis_to_json(*s.custom)
                                                : json(to_string(s.basis));
    } else {
      e["angle_deg"] = s.angle_deg;
    }
    e["paths"] = ps;
    elems.push_back(e);
  }
  json an = json::array();
  for (const auto& [p, a] : analyzers_) {
    an.push_back({{"path", path_name(p)},
                  {"basis", basis_to_json(a.basis)},
                  {"detectors", {a.detector_t, a.detector_r}}});
  }
  json root{{"schema", kNetworkSchema}, {"elements", elems}, {"analyzers", an}};
  return root.dump(2);
}

Network Network::from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("network JSON: ") + e.what());
  }
  try {
    check_keys(root, {"schema", "elements", "analyzers"}, "network");
    if (root.value("schema", "") != kNetworkSchema) {
      throw Error("unsupported network schema");
    }
    Network net;
    for (const auto& e : root.at("elements")) {
      check_keys(e, {"kind", "basis", "angle_deg", "paths"}, "element");
      ElementSpec s;
      const std::string kind = e.at("kind").get<std::string>();
      if (kind == "pbs") {
        s.kind = ElementSpec::Kind::Pbs;
        const auto b = basis_from_json(e.at("basis"));
        s.basis = b.name();
        if (b.name() == BasisName::Custom) s.custom = b;
      } else if (kind == "hwp" || kind == "qwp") {
        s.kind = kind == "hwp" ? ElementSpec::Kind::HalfWave
                               : ElementSpec::Kind::QuarterWave;
        s.angle_deg = e.at("angle_deg").get<double>();
      } else {
        throw Error("unknown element kind '" + kind + "'");
      }
      for (const auto& p : e.at("paths")) s.paths.push_back(parse_path(p.get<std::string>()));
      net.add(std::move(s));
    }
    for (const auto& a : root.at("analyzers")) {
      check_keys(a, {"path", "basis", "detectors"}, "analyzer");
      const auto& d = a.at("detectors");
      if (!d.is_array() || d.size() != 2) throw Error("analyzer needs two detectors");
      net.set_analyzer(parse_path(a.at("path").get<std::string>()),
                       {basis_from_json(a.at("basis")), d[0].get<std::string>(),
                        d[1].get<std::string>()});
    }
    return net;
  } catch (const json::exception& e) {
    throw Error(std::string("network JSON: ") + e.what());
  }
}

Network heralded_cnot_network(bool with_hwp) {
  using namespace paths;
  Network net;
  net.add(ElementSpec::pbs(BasisName::HV, c_in, a1, p2, p1));
  net.add(ElementSpec::pbs(BasisName::DA, a2, t_in, p4, p3));
  if (with_hwp) net.add(ElementSpec::hwp(0.0, p2));
  net.add(ElementSpec::pbs(BasisName::RL, p2, p3, p2_out, p3_out));
  net.set_analyzer(p2_out, {PolarizationBasis::hv(), "D_H1", "D_V1"});
  net.set_analyzer(p3_out, {PolarizationBasis::hv(), "D_H2", "D_V2"});
  return net;
}

Network with_output_analyzers(Network net, const PolarizationBasis& control,
                              const PolarizationBasis& target) {
  net.set_analyzer(paths::c_out, {control, "C_t", "C_r"});
  net.set_analyzer(paths::t_out, {target, "T_t", "T_r"});
  return net;
}

// ------------------------------------------------------------- propagation

StateVector propagate(const Network& net, const StateVector& input) {
  return apply_all(net.elements(), input);
}

std::vector<Branch> propagate(const Network& net, const MixedEnsemble& input) {
  std::vector<Branch> out;
  for (const auto& b : input.branches()) out.push_back({b.weight, propagate(net, b.state)});
  return out;
}

namespace {

struct DetectorSlot {
  std::string id;
  Path path;
  Pol pol;  // after rotation onto H/V: t -> H, r -> V
  const DetectorModel* model;
  std::vector<std::vector<double>> kernel;  // rows by true n
};

// Enumerates reported counts for all detectors given the true counts.
void enumerate_patterns(const std::vector<DetectorSlot>& slots,
                        const std::vector<int>& n, std::size_t k,
                        ClickPattern& cur, double p,
                        std::vector<std::pair<ClickPattern, double>>& out) {
  if (p == 0.0) return;
  if (k == slots.size()) {
    out.emplace_back(cur, p);
    return;
  }
  const auto& row = slots[k].kernel[static_cast<std::size_t>(n[k])];
  for (std::size_t m = 0; m < row.size(); ++m) {
    if (row[m] == 0.0) continue;
    cur[slots[k].id] = static_cast<int>(m);
    enumerate_patterns(slots, n, k + 1, cur, p * row[m], out);
  }
}

}  // namespace

OutcomeDistribution outcome_distribution(const Network& net,
                                         const MixedEnsemble& input,
                                         const DetectorModel& det,
                                         const OutcomeOptions& opts) {
  std::vector<ModeLinearMap> rotations;
  std::vector<Path> measured;
  std::vector<DetectorSlot> slots;
  for (const auto& [p, a] : net.analyzers()) {
    rotations.push_back(analyzer_rotation(a.basis, p));
    measured.push_back(p);
  }
  for (const auto& id : net.detectors()) {
    const auto [path, outcome] = net.detector_port(id);
    auto it = opts.per_detector.find(id);
    const DetectorModel* model = it == opts.per_detector.end() ? &det : &it->second;
    slots.push_back({id, path, outcome == 0 ? Pol::H : Pol::V, model,
                     response_kernel(*model)});
  }

  // Accumulated per pattern: probability and weighted conditional branches.
  std::map<ClickPattern, std::pair<double, std::vector<Branch>>> acc;
  std::vector<std::pair<ClickPattern, double>> patterns;
  ClickPattern cur;

  for (const auto& branch : input.branches()) {
    if (branch.weight == 0.0) continue;
    const StateVector out = apply_all(rotations, propagate(net, branch.state));

    std::map<FockState, StateVector> groups;
    for (const auto& [f, a] : out.terms()) {
      auto [meas, rest] = f.split(measured);
      groups.try_emplace(meas, out.tolerance()).first->second.add(rest, a);
    }

    for (auto& [meas, residual] : groups) {
      residual.prune();
      const double pm = branch.weight * residual.norm2();
      if (pm == 0.0) continue;
      std::vector<int> n;
      for (const auto& s : slots) {
        int count = 0;
        for (const auto& [mode, c] : meas.occupation()) {
          if (mode.path == s.path && mode.pol == s.pol) count += c;
        }
        n.push_back(count);
      }
      patterns.clear();
      enumerate_patterns(slots, n, 0, cur, pm, patterns);
      for (const auto& [pat, p] : patterns) {
        auto& entry = acc[pat];
        entry.first += p;
        if (opts.keep_states) {
          entry.second.push_back({p, residual.normalized()});
        }
      }
    }
  }

  OutcomeDistribution dist;
  for (auto& [pat, entry] : acc) {
    OutcomeEntry e;
    e.probability = entry.first;
    if (opts.keep_states && entry.first > 0.0) {
      for (auto& b : entry.second) b.weight /= entry.first;
      // Rounding may push the sum a hair above one.
      double total = 0.0;
      for (const auto& b : entry.second) total += b.weight;
      for (auto& b : entry.second) b.weight /= std::max(total, 1.0);
      e.conditional = MixedEnsemble(std::move(entry.second));
    }
    dist.emplace(pat, std::move(e));
  }
  return dist;
}

double probability_of(const OutcomeDistribution& d,
                      const std::function<bool(const ClickPattern&)>& pred) {
  double total = 0.0;
  for (const auto& [pat, e] : d) {
    if (pred(pat)) total += e.probability;
  }
  return total;
}

// ------------------------------------------------------------- Bell states

std::string to_string(BellState b) {
  switch (b) {
    case BellState::PhiPlus: return "Phi+";
    case BellState::PhiMinus: return "Phi-";
    case BellState::PsiPlus: return "Psi+";
    case BellState::PsiMinus: return "Psi-";
  }
  return "Phi+";
}

StateVector bell_state(BellState b, Path p, Path q) {
  auto pair = [&](Pol a, Pol c) {
    return StateVector::basis(
        FockState{}.with_photon({p, a, 0}).with_photon({q, c, 0}), M_SQRT1_2);
  };
  switch (b) {
    case BellState::PhiPlus: return pair(Pol::H, Pol::H) + pair(Pol::V, Pol::V);
    case BellState::PhiMinus: return pair(Pol::H, Pol::H) - pair(Pol::V, Pol::V);
    case BellState::PsiPlus: return pair(Pol::H, Pol::V) + pair(Pol::V, Pol::H);
    case BellState::PsiMinus: return pair(Pol::H, Pol::V) - pair(Pol::V, Pol::H);
  }
  throw Error("unknown Bell state");
}

std::map<ClickPattern, BellState> bell_pattern_map(const Network& net) {
  const std::vector<Path> injected{paths::p2, paths::p3};
  const Network tail = net.downstream_of(injected);
  std::map<ClickPattern, BellState> map;
  std::set<BellState> separated;
  for (BellState b : kBellStates) {
    const auto dist = outcome_distribution(
        tail, MixedEnsemble::pure(bell_state(b, paths::p2, paths::p3)),
        DetectorModel::ideal());
    for (const auto& [pat, e] : dist) {
      if (e.probability < 1e-14) continue;
      // One photon on each of two different analyzer paths.
      std::map<Path, int> per_path;
      bool single = true;
      for (const auto& [id, m] : pat) {
        if (m > 1) single = false;
        per_path[tail.detector_port(id).first] += m;
      }
      int paths_hit = 0;
      for (const auto& [p, m] : per_path) paths_hit += m == 1;
      if (!single || paths_hit != 2) continue;
      auto [it, inserted] = map.emplace(pat, b);
      if (!inserted && it->second != b) {
        throw Error("analyzer does not separate Bell states");
      }
      separated.insert(b);
    }
  }
  if (separated.size() != 2) throw Error("analyzer does not separate Bell states");
  return map;
}

StateVector cnot_reference(Complex alpha, Complex beta, Complex gamma,
                           Complex delta, Path control, Path target) {
  auto term = [&](Pol c, Pol t, Complex a) {
    return StateVector::basis(
        FockState{}.with_photon({control, c, 0}).with_photon({target, t, 0}), a);
  };
  StateVector s = term(Pol::H, Pol::H, alpha * gamma) +
                  term(Pol::H, Pol::V, alpha * delta) +
                  term(Pol::V, Pol::H, beta * delta) +
                  term(Pol::V, Pol::V, beta * gamma);
  s.prune();
  return s;
}

std::vector<ModeLinearMap> pauli_correction(BellState b) {
  switch (b) {
    case BellState::PhiPlus: return {};
    case BellState::PhiMinus: return {pauli_z(paths::c_out)};
    case BellState::PsiPlus: return {pauli_x(paths::t_out)};
    case BellState::PsiMinus: return {pauli_z(paths::c_out), pauli_x(paths::t_out)};
  }
  return {};
}

std::vector<SourceSpec> gate_sources(Complex alpha, Complex beta,
                                     Complex gamma, Complex delta) {
  return {{paths::c_in, {alpha, beta}},
          {paths::a1, jones::plus()},
          {paths::a2, jones::H()},
          {paths::t_in, {gamma, delta}}};
}

}  // namespace heraldix
