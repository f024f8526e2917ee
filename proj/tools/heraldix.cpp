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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "heraldix/demux.hpp"
#include "heraldix/error.hpp"
#include "heraldix/fidelity.hpp"
#include "heraldix/herald.hpp"
#include "heraldix/network.hpp"
#include "heraldix/parallel.hpp"
#include "heraldix/reproduce.hpp"
#include "heraldix/scenario.hpp"
#include "json.hpp"

#ifndef HERALDIX_DEFAULT_GOLDEN_DIR
#define HERALDIX_DEFAULT_GOLDEN_DIR "data/golden"
#endif

namespace {

using namespace heraldix;
using Cell = std::variant<std::string, double, std::int64_t>;

constexpr int kExitAssert = 1;
constexpr int kExitConfig = 2;

/// Rows with fixed column order, written as CSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << ',';
      if (const auto* s = std::get_if<std::string>(&r[i])) {
        os << csv_field(*s);
      } else if (const auto* d = std::get_if<double>(&r[i])) {
        os << format_number(*d);
      } else {
        os << std::get<std::int64_t>(r[i]);
      }
    }
    os << '\n';
  }
  return os.str();
}

nlohmann::ordered_json json_value(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return std::strtod(format_number(*d).c_str(), nullptr);
  return std::get<std::int64_t>(c);
}

std::string to_json(const Table& t, nlohmann::ordered_json extra = {}) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json o;
    for (std::size_t i = 0; i < r.size(); ++i) o[t.columns[i]] = json_value(r[i]);
    rows.push_back(std::move(o));
  }
  nlohmann::ordered_json root = extra.is_object() ? extra : nlohmann::ordered_json::object();
  root["rows"] = std::move(rows);
  return root.dump(2) + "\n";
}

struct Globals {
  std::string config;
  std::string out;
  std::string format = "csv";
  unsigned jobs = 1;
  double tolerance = 0.0025;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Scenario load_scenario(const Globals& g) {
  if (g.config.empty()) return Scenario{};
  return parse_scenario(read_text(g.config));
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + g.out);
  out << text;
}

void emit_table(const Globals& g, const Table& t, nlohmann::ordered_json extra = {}) {
  emit(g, g.format == "json" ? to_json(t, std::move(extra)) : to_csv(t));
}

bool is_ideal(const Scenario& sc) {
  return sc.source.eta_s == 1.0 && sc.source.overlap_x == 1.0 &&
         sc.detector.kind == DetectorKind::IdealPnrd;
}

// ------------------------------------------------------------- commands

int cmd_truth_table(const Globals& g, const std::string& protocol_name) {
  const Scenario sc = load_scenario(g);
  const Protocol protocol = parse_protocol(protocol_name);
  const Network net = heralded_cnot_network(sc.with_hwp);
  const auto table = simulate_tomography(net, sc.source, sc.detector, protocol);
  const auto ideal = simulate_tomography(net, SourceModel{}, DetectorModel::ideal(), protocol);
  const double f = protocol == Protocol::F1   ? hofmann_f1(table)
                   : protocol == Protocol::F2 ? hofmann_f2(table)
                                              : hofmann_f3(table);
  Table t{{"in_label", "out_label", "probability", "ideal", "fidelity"}, {}};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int o = 0; o < 4; ++o) {
      const double p = table.cells()[o][i];
      const double q = ideal.cells()[o][i];
      worst = std::max(worst, std::abs(p - q));
      t.rows.push_back({basis_labels(table.basis_in())[i], basis_labels(table.basis_out())[o],
                        p, q, f});
    }
  }
  emit_table(g, t, {{"protocol", to_string(protocol)}, {"fidelity", json_value(f)}});
  if (is_ideal(sc) && worst > 1e-10) {
    std::cerr << "ideal table deviates from the CNOT table by " << format_number(worst) << "\n";
    return kExitAssert;
  }
  return 0;
}

int cmd_herald_sweep(const Globals& g, std::string etas_opt, std::string det_opt, double eta_d,
                     const std::string& form_name) {
  const Scenario sc = load_scenario(g);
  std::vector<double> etas = sc.etas;
  if (!etas_opt.empty()) etas = parse_grid(etas_opt);
  if (etas.empty()) etas = parse_grid("0.1:1.0:0.1");
  for (double e : etas) {
    if (!(e > 0.0 && e <= 1.0)) throw ConfigError("eta_s grid values must lie in (0, 1]");
  }
  if (det_opt.empty()) det_opt = sc.sweep_detector;
  std::vector<std::string> kinds;
  if (det_opt == "all") {
    kinds = {"ide", "pse", "sta"};
  } else {
    for (const auto& k : {"ide", "pse", "sta"}) {
      if (detector_for_kind(det_opt, eta_d).kind == detector_for_kind(k, eta_d).kind) {
        kinds = {k};
      }
    }
    if (kinds.empty()) throw ConfigError("unknown detector kind '" + det_opt + "'");
  }
  if (!(eta_d >= 0.0 && eta_d <= 1.0)) throw ConfigError("eta_d outside [0, 1]");
  P244Form form;
  if (form_name == "printed") {
    form = P244Form::Printed;
  } else if (form_name == "coherent") {
    form = P244Form::Coherent;
  } else {
    throw ConfigError("closed form must be printed or coherent");
  }
  const GateInput in = sc.input;
  struct Row {
    HeraldBudget bf, cf;
  };
  const std::size_t n = etas.size() * kinds.size();
  const auto rows = parallel_map<Row>(n, g.jobs, [&](std::size_t i) {
    const auto det = detector_for_kind(kinds[i / etas.size()], eta_d);
    const double e = etas[i % etas.size()];
    return Row{herald_budget_bruteforce(in.alpha, in.beta, in.gamma, in.delta, e, det),
               p2_terms_closed_form(in.alpha, in.beta, in.gamma, in.delta, e, det, form)};
  });
  Table t{{"eta_s", "eta_d", "detector_kind", "p4", "p2", "eta_h", "eta_h_closed_form",
           "abs_err"},
          {}};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& kind = kinds[i / etas.size()];
    const double shown_eta_d = kind == "ide" ? 1.0 : eta_d;
    const auto& r = rows[i];
    t.rows.push_back({etas[i % etas.size()], shown_eta_d, kind, r.bf.p4, r.bf.p2(), r.bf.eta_h,
                      r.cf.eta_h, std::abs(r.bf.eta_h - r.cf.eta_h)});
  }
  emit_table(g, t, {{"closed_form", form_name}});
  return 0;
}

std::string golden_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("HERALDIX_GOLDEN_DIR"); env && *env) return env;
  return HERALDIX_DEFAULT_GOLDEN_DIR;
}

int cmd_reproduce(const Globals& g, const std::string& golden_flag) {
  ReproduceOptions opts;
  opts.golden_dir = golden_dir(golden_flag);
  opts.tolerance = g.tolerance;
  opts.jobs = g.jobs;
  if (!(opts.tolerance >= 0.0)) throw ConfigError("tolerance must be >= 0");
  const auto results = reproduce_paper(opts);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  if (g.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      arr.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
    }
    emit(g, nlohmann::ordered_json{{"pass", all}, {"checks", arr}}.dump(2) + "\n");
  } else {
    std::ostringstream os;
    for (const auto& r : results) {
      os << (r.pass ? "PASS " : "FAIL ") << r.id << ": " << r.title << " | " << r.detail << '\n';
    }
    os << (all ? "ALL PASS" : "SOME CHECKS FAILED") << '\n';
    emit(g, os.str());
  }
  return all ? 0 : kExitAssert;
}

int cmd_demux(const Globals& g, std::int64_t pulses_flag) {
  const Scenario sc = load_scenario(g);
  const std::int64_t pulses = pulses_flag > 0 ? pulses_flag : sc.pulses;
  if (pulses <= 0) throw ConfigError("pulses must be positive");
  sc.demux.validate();
  const auto s = schedule(sc.demux, pulses);
  Table t{{"pulse_index", "channel"}, {}};
  for (std::size_t i = 0; i < s.size(); ++i) {
    t.rows.push_back({static_cast<std::int64_t>(i + 1), static_cast<std::int64_t>(s[i])});
  }
  emit_table(g, t, {{"eta_s", json_value(efficiency_budget(sc.demux))}});
  return 0;
}

int cmd_fidelity(const Globals& g, const std::string& golden_flag, double p_pop, double sxx,
                 double syy) {
  const std::string dir = golden_dir(golden_flag);
  std::vector<ProbabilityTable> tables;
  for (const char* f : kGoldenTableFiles) {
    tables.push_back(ProbabilityTable::from_csv(read_text(dir + "/" + f)));
  }
  const auto r = fidelity_report(tables[0], tables[1], tables[2],
                                 psi_minus_fidelity(p_pop, sxx, syy), dir);
  Table t{{"metric", "value"},
          {{"F1", r.f1},
           {"F2", r.f2},
           {"F3", r.f3},
           {"F_proc_lo", r.proc_lo},
           {"F_proc_hi", r.proc_hi},
           {"F_avg", r.avg_gate},
           {"F_bell", r.bell_f},
           {"entangling", std::int64_t{r.entangling}},
           {"parallelism", std::int64_t{r.parallelism}},
           {"out_of_range", std::int64_t{r.out_of_range}}}};
  emit_table(g, t);
  return 0;
}

int cmd_bell(const Globals& g) {
  const Scenario sc = load_scenario(g);
  const auto b = simulate_bell(heralded_cnot_network(sc.with_hwp), sc.source, sc.detector);
  Table t{{"population", "sxx", "syy", "fidelity"},
          {{b.population, b.sxx, b.syy, b.fidelity}}};
  emit_table(g, t);
  return 0;
}

int cmd_network(const Globals& g, bool no_hwp) {
  emit(g, heralded_cnot_network(!no_hwp).to_json() + "\n");
  return 0;
}

int cmd_bell_map(const Globals& g, bool no_hwp) {
  Table t{{"pattern", "bell_state"}, {}};
  for (const auto& [p, b] : bell_pattern_map(heralded_cnot_network(!no_hwp))) {
    t.rows.push_back({to_string(p), to_string(b)});
  }
  emit_table(g, t);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heraldix: exact few-photon simulation of a heralded linear-optical CNOT"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "JSON scenario file");
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--tolerance", g.tolerance, "Extra slack for printed-number comparisons");

  std::string protocol = "f1";
  auto* tt = app.add_subcommand("truth-table", "Heralded truth table under the scenario");
  tt->add_option("--protocol", protocol, "f1, f2 or f3");

  std::string etas, det, form = "printed";
  double eta_d = 0.8;
  auto* hs = app.add_subcommand("herald-sweep", "Heralding efficiency versus eta_s");
  hs->add_option("--etas", etas, "Grid: a,b,c or start:stop:step");
  hs->add_option("--detector", det, "ide, pse, sta or all");
  hs->add_option("--eta-d", eta_d, "Detector element efficiency");
  hs->add_option("--closed-form", form, "printed or coherent P_2-4-4");

  std::string golden;
  auto* rp = app.add_subcommand("reproduce-paper", "Run every acceptance check");
  rp->add_option("--golden-dir", golden, "Directory with the reference table files");

  std::int64_t pulses = 0;
  auto* dm = app.add_subcommand("demux-schedule", "Pulse to channel routing");
  dm->add_option("--pulses", pulses, "Number of pulses");

  double p_pop = 0.8729, sxx = -0.8039, syy = -0.7875;
  auto* fi = app.add_subcommand("fidelity", "Fidelities from the golden tables");
  fi->add_option("--golden-dir", golden, "Directory with the reference table files");
  fi->add_option("--population", p_pop, "Bell-state population");
  fi->add_option("--sxx", sxx, "sigma_x sigma_x correlation");
  fi->add_option("--syy", syy, "sigma_y sigma_y correlation");

  auto* be = app.add_subcommand("bell", "Simulated Bell-state estimate for |->|V>");

  bool no_hwp = false;
  auto* nw = app.add_subcommand("network", "Preset network as JSON");
  nw->add_flag("--no-hwp", no_hwp, "Omit the half-wave plate on path 2");
  auto* bm = app.add_subcommand("bell-map", "Click pattern to Bell state mapping");
  bm->add_flag("--no-hwp", no_hwp, "Omit the half-wave plate on path 2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (tt->parsed()) return cmd_truth_table(g, protocol);
    if (hs->parsed()) return cmd_herald_sweep(g, etas, det, eta_d, form);
    if (rp->parsed()) return cmd_reproduce(g, golden);
    if (dm->parsed()) return cmd_demux(g, pulses);
    if (fi->parsed()) return cmd_fidelity(g, golden, p_pop, sxx, syy);
    if (be->parsed()) return cmd_bell(g);
    if (nw->parsed()) return cmd_network(g, no_hwp);
    if (bm->parsed()) return cmd_bell_map(g, no_hwp);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitAssert;
  }
  return kExitConfig;
}
