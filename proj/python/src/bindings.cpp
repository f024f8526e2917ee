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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heraldix/demux.hpp"
#include "heraldix/error.hpp"
#include "heraldix/fidelity.hpp"
#include "heraldix/herald.hpp"
#include "heraldix/network.hpp"
#include "heraldix/reproduce.hpp"

namespace py = pybind11;
using namespace heraldix;

namespace {

DetectorModel make_detector(const std::string& kind, double eta_d, int k,
                            const std::string& click) {
  DetectorModel d;
  d.kind = parse_detector_kind(kind);
  d.click = parse_click_model(click);
  d.eta_d = d.kind == DetectorKind::IdealPnrd ? 1.0 : eta_d;
  d.k = d.kind == DetectorKind::PseudoPnrd ? k : 1;
  d.validate();
  return d;
}

py::dict budget_dict(const HeraldBudget& b) {
  py::dict d;
  d["p4"] = b.p4;
  d["p2"] = b.p2();
  d["eta_h"] = b.eta_h;
  d["p2_terms"] = b.p2_terms;
  return d;
}

ProbabilityTable::Grid grid_of(const ProbabilityTable& t) { return t.cells(); }

}  // namespace

PYBIND11_MODULE(_heraldix, m) {
  m.doc() = "Exact few-photon simulation of a heralded linear-optical CNOT";
  auto base = py::register_exception<Error>(m, "HeraldixError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  m.def("pnrd_response",
        [](int n, const std::string& kind, double eta_d, int k, const std::string& click) {
          return pnrd_response(n, make_detector(kind, eta_d, k, click));
        },
        py::arg("n"), py::arg("kind") = "pseudo_pnrd", py::arg("eta_d") = 0.8, py::arg("k") = 4,
        py::arg("click") = "fixed", "P(m | n) for m = 0..max reading.");

  m.def("eta_h_closed_form",
        [](const std::string& kind, double eta_s, double eta_d) {
          return eta_h_closed_form(kind, eta_s, eta_d);
        },
        py::arg("kind"), py::arg("eta_s"), py::arg("eta_d") = 0.8,
        "Heralding efficiency for |+>|H>; kind is ide, pse or sta.");

  m.def("herald_budget",
        [](Complex a, Complex b, Complex c, Complex d, double eta_s, const std::string& kind,
           double eta_d, int k, const std::string& click, bool closed_form,
           const std::string& form) {
          const auto det = make_detector(kind, eta_d, k, click);
          if (!closed_form) return budget_dict(herald_budget_bruteforce(a, b, c, d, eta_s, det));
          if (form != "printed" && form != "coherent") {
            throw ConfigError("closed form must be printed or coherent");
          }
          return budget_dict(p2_terms_closed_form(
              a, b, c, d, eta_s, det, form == "printed" ? P244Form::Printed : P244Form::Coherent));
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("delta"), py::arg("eta_s"),
        py::arg("kind") = "pseudo_pnrd", py::arg("eta_d") = 0.8, py::arg("k") = 4,
        py::arg("click") = "fixed", py::arg("closed_form") = false, py::arg("form") = "printed",
        "P4, P2 terms and eta_h by exact enumeration or closed form.");

  m.def("simulate_table",
        [](const std::string& protocol, double eta_s, double overlap_x, const std::string& kind,
           double eta_d, int k, const std::string& click, bool with_hwp) {
          const auto t = simulate_tomography(heralded_cnot_network(with_hwp),
                                             SourceModel{eta_s, overlap_x},
                                             make_detector(kind, eta_d, k, click),
                                             parse_protocol(protocol));
          return grid_of(t);
        },
        py::arg("protocol") = "f1", py::arg("eta_s") = 1.0, py::arg("overlap_x") = 1.0,
        py::arg("kind") = "ideal_pnrd", py::arg("eta_d") = 1.0, py::arg("k") = 4,
        py::arg("click") = "fixed", py::arg("with_hwp") = true,
        "Simulated 4x4 table, cells[out][in].");

  m.def("table_fidelities",
        [](const std::string& a, const std::string& b, const std::string& c) {
          const auto r = fidelity_report(ProbabilityTable::from_csv(a), ProbabilityTable::from_csv(b),
                                         ProbabilityTable::from_csv(c), 0.0, "python");
          py::dict d;
          d["F1"] = r.f1;
          d["F2"] = r.f2;
          d["F3"] = r.f3;
          d["F_proc_lo"] = r.proc_lo;
          d["F_proc_hi"] = r.proc_hi;
          d["F_avg"] = r.avg_gate;
          d["entangling"] = r.entangling;
          d["parallelism"] = r.parallelism;
          return d;
        },
        py::arg("table_a"), py::arg("table_b"), py::arg("table_c"),
        "Hofmann fidelities from three CSV tables.");

  m.def("psi_minus_fidelity", &psi_minus_fidelity, py::arg("population"), py::arg("sxx"),
        py::arg("syy"));

  m.def("bell_pattern_map",
        [](bool with_hwp) {
          std::map<std::string, std::string> out;
          for (const auto& [p, b] : bell_pattern_map(heralded_cnot_network(with_hwp))) {
            out[to_string(p)] = to_string(b);
          }
          return out;
        },
        py::arg("with_hwp") = true);

  m.def("demux_schedule",
        [](std::int64_t pulses, int cycle_len, int channels) {
          DemuxConfig cfg;
          cfg.cycle_len = cycle_len;
          cfg.channels = channels;
          cfg.laser_rep_hz = 1e6 * cycle_len;
          cfg.validate();
          return schedule(cfg, pulses);
        },
        py::arg("pulses"), py::arg("cycle_len") = 100, py::arg("channels") = 4);

  m.def("efficiency_budget",
        [](double eta_f, double eta_w, double eta_l) {
          DemuxConfig cfg;
          cfg.eta_f = eta_f;
          cfg.eta_w = eta_w;
          cfg.eta_l = eta_l;
          cfg.validate();
          return efficiency_budget(cfg);
        },
        py::arg("eta_f"), py::arg("eta_w"), py::arg("eta_l"));

  m.def("reproduce_paper",
        [](const std::string& golden_dir, double tolerance, unsigned jobs) {
          ReproduceOptions o;
          o.golden_dir = golden_dir;
          o.tolerance = tolerance;
          o.jobs = jobs;
          py::list out;
          for (const auto& r : reproduce_paper(o)) {
            py::dict d;
            d["id"] = r.id;
            d["title"] = r.title;
            d["pass"] = r.pass;
            d["detail"] = r.detail;
            out.append(d);
          }
          return out;
        },
        py::arg("golden_dir"), py::arg("tolerance") = 0.0025, py::arg("jobs") = 1);
}
