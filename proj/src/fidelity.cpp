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

#include "heraldix/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "heraldix/error.hpp"
#include "heraldix/herald.hpp"

namespace heraldix {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int label_index(TableBasis b, std::string_view label) {
  const auto& ls = basis_labels(b);
  for (int i = 0; i < 4; ++i) {
    if (ls[static_cast<std::size_t>(i)] == label) return i;
  }
  return -1;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error("bad number '" + s + "'");
  }
  if (used != s.size()) throw Error("bad number '" + s + "'");
  return v;
}

TableBasis basis_of_label(const std::string& label) {
  for (TableBasis b : {TableBasis::HV, TableBasis::DA, TableBasis::DAHV, TableBasis::RL}) {
    if (label_index(b, label) >= 0) return b;
  }
  throw Error("unknown table label '" + label + "'");
}

void require(const ProbabilityTable& t, TableBasis in, TableBasis out,
             const char* what) {
  if (t.basis_in() != in || t.basis_out() != out) {
    throw Error(std::string(what) + " needs a " + to_string(in) + "/" +
                to_string(out) + " table, got " + to_string(t.basis_in()) +
                "/" + to_string(t.basis_out()));
  }
}

}  // namespace

std::string to_string(TableBasis b) {
  switch (b) {
    case TableBasis::HV: return "HV";
    case TableBasis::DA: return "DA";
    case TableBasis::DAHV: return "DA-HV";
    case TableBasis::RL: return "RL";
  }
  return "HV";
}

TableBasis parse_table_basis(std::string_view s) {
  if (s == "HV") return TableBasis::HV;
  if (s == "DA") return TableBasis::DA;
  if (s == "DA-HV") return TableBasis::DAHV;
  if (s == "RL") return TableBasis::RL;
  throw Error("unknown table basis '" + std::string(s) + "'");
}

const std::array<std::string, 4>& basis_labels(TableBasis b) {
  static const std::array<std::string, 4> hv{"HH", "HV", "VH", "VV"};
  static const std::array<std::string, 4> da{"++", "+-", "-+", "--"};
  static const std::array<std::string, 4> dahv{"+H", "+V", "-H", "-V"};
  static const std::array<std::string, 4> rl{"RR", "RL", "LR", "LL"};
  switch (b) {
    case TableBasis::HV: return hv;
    case TableBasis::DA: return da;
    case TableBasis::DAHV: return dahv;
    case TableBasis::RL: return rl;
  }
  return hv;
}

// ---------------------------------------------------------------- tables

ProbabilityTable::ProbabilityTable(TableBasis basis_in, TableBasis basis_out,
                                   Grid cells, double column_tolerance)
    : basis_in_(basis_in), basis_out_(basis_out), cells_(cells) {
  for (int i = 0; i < 4; ++i) {
    for (int o = 0; o < 4; ++o) {
      const double v = cells_[static_cast<std::size_t>(o)][static_cast<std::size_t>(i)];
      if (!std::isfinite(v) || v < 0.0) {
        throw Error("invalid probability in column '" +
                    basis_labels(basis_in_)[static_cast<std::size_t>(i)] + "'");
      }
    }
    const double s = column_sum(i);
    if (std::abs(s - 1.0) > column_tolerance) {
      throw Error("column '" + basis_labels(basis_in_)[static_cast<std::size_t>(i)] +
                  "' sums to " + fmt(s));
    }
  }
}

double ProbabilityTable::column_sum(int in) const {
  double s = 0.0;
  for (const auto& row : cells_) s += row[static_cast<std::size_t>(in)];
  return s;
}

double ProbabilityTable::at(std::string_view out, std::string_view in) const {
  const int o = label_index(basis_out_, out);
  const int i = label_index(basis_in_, in);
  if (o < 0 || i < 0) {
    throw Error("label '" + std::string(o < 0 ? out : in) + "' not in table");
  }
  return cells_[static_cast<std::size_t>(o)][static_cast<std::size_t>(i)];
}

std::string ProbabilityTable::to_csv_long() const {
  std::ostringstream os;
  os << "in_label,out_label,probability\n";
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t o = 0; o < 4; ++o) {
      os << basis_labels(basis_in_)[i] << ',' << basis_labels(basis_out_)[o] << ','
         << fmt(cells_[o][i]) << '\n';
    }
  }
  return os.str();
}

std::string ProbabilityTable::to_csv_grid() const {
  std::ostringstream os;
  os << "out\\in";
  for (const auto& l : basis_labels(basis_in_)) os << ',' << l;
  os << '\n';
  for (std::size_t o = 0; o < 4; ++o) {
    os << basis_labels(basis_out_)[o];
    for (std::size_t i = 0; i < 4; ++i) os << ',' << fmt(cells_[o][i]);
    os << '\n';
  }
  return os.str();
}

ProbabilityTable ProbabilityTable::from_csv(std::string_view text,
                                            double column_tolerance) {
  std::vector<std::vector<std::string>> rows;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty() || line == "\r" || line.front() == '#') continue;
    rows.push_back(split(line, ','));
  }
  if (rows.empty()) throw Error("empty table");

  Grid cells{};
  std::array<std::array<bool, 4>, 4> seen{};
  TableBasis bin{}, bout{};
  if (rows[0].size() == 3 && rows[0][0] == "in_label") {
    if (rows.size() != 17) throw Error("long table needs 16 rows");
    bin = basis_of_label(rows[1][0]);
    bout = basis_of_label(rows[1][1]);
    for (std::size_t r = 1; r < rows.size(); ++r) {
      if (rows[r].size() != 3) throw Error("long table row needs 3 fields");
      const int i = label_index(bin, rows[r][0]);
      const int o = label_index(bout, rows[r][1]);
      if (i < 0 || o < 0) throw Error("mixed bases in table");
      if (seen[o][i]) throw Error("duplicate cell " + rows[r][1] + "|" + rows[r][0]);
      seen[o][i] = true;
      cells[o][i] = parse_double(rows[r][2]);
    }
  } else {
    if (rows.size() != 5 || rows[0].size() != 5) throw Error("grid table needs 5x5 fields");
    bin = basis_of_label(rows[0][1]);
    bout = basis_of_label(rows[1][0]);
    for (std::size_t c = 1; c < 5; ++c) {
      const int i = label_index(bin, rows[0][c]);
      if (i < 0) throw Error("mixed bases in table header");
      for (std::size_t r = 1; r < 5; ++r) {
        if (rows[r].size() != 5) throw Error("grid table needs 5x5 fields");
        const int o = label_index(bout, rows[r][0]);
        if (o < 0) throw Error("mixed bases in table rows");
        if (seen[o][i]) throw Error("duplicate cell " + rows[r][0] + "|" + rows[0][c]);
        seen[o][i] = true;
        cells[o][i] = parse_double(rows[r][c]);
      }
    }
  }
  return {bin, bout, cells, column_tolerance};
}

std::vector<std::string> ProbabilityTable::diff(const ProbabilityTable& other,
                                                double tol) const {
  std::vector<std::string> out;
  if (basis_in_ != other.basis_in_ || basis_out_ != other.basis_out_) {
    out.push_back("bases differ: " + to_string(basis_in_) + "/" + to_string(basis_out_) +
                  " vs " + to_string(other.basis_in_) + "/" + to_string(other.basis_out_));
    return out;
  }
  for (std::size_t o = 0; o < 4; ++o) {
    for (std::size_t i = 0; i < 4; ++i) {
      if (std::abs(cells_[o][i] - other.cells_[o][i]) > tol) {
        out.push_back("P(" + basis_labels(basis_out_)[o] + "|" + basis_labels(basis_in_)[i] +
                      "): " + fmt(cells_[o][i]) + " vs " + fmt(other.cells_[o][i]));
      }
    }
  }
  return out;
}

ProbabilityTable reference_table(char which) {
  switch (which) {
    case 'a':
      return {TableBasis::HV, TableBasis::HV,
              {{{0.8884, 0.1265, 0.0108, 0.0082},
                {0.1095, 0.8735, 0.0194, 0.0123},
                {0.0020, 0.0, 0.1013, 0.8794},
                {0.0, 0.0, 0.8686, 0.1002}}}};
    case 'b':
      return {TableBasis::DA, TableBasis::DA,
              {{{0.8684, 0.0102, 0.0575, 0.0265},
                {0.0, 0.0832, 0.004, 0.8458},
                {0.1299, 0.0153, 0.9385, 0.0145},
                {0.0018, 0.8913, 0.0, 0.1133}}}};
    case 'c':
      return {TableBasis::DAHV, TableBasis::RL,
              {{{0.0751, 0.3921, 0.4120, 0.0531},
                {0.3529, 0.0608, 0.0469, 0.4134},
                {0.4970, 0.0578, 0.0996, 0.4804},
                {0.0751, 0.4894, 0.4336, 0.0531}}}};
    default: break;
  }
  throw Error(std::string("no reference table '") + which + "'");
}

// ------------------------------------------------------------- estimators

double hofmann_f1(const ProbabilityTable& t) {
  require(t, TableBasis::HV, TableBasis::HV, "F1");
  return (t.at("HH", "HH") + t.at("HV", "HV") + t.at("VV", "VH") + t.at("VH", "VV")) / 4.0;
}

double hofmann_f2(const ProbabilityTable& t) {
  require(t, TableBasis::DA, TableBasis::DA, "F2");
  return (t.at("++", "++") + t.at("--", "+-") + t.at("-+", "-+") + t.at("+-", "--")) / 4.0;
}

double hofmann_f3(const ProbabilityTable& t) {
  require(t, TableBasis::DAHV, TableBasis::RL, "F3");
  return (t.at("RL", "+H") + t.at("LR", "+H") + t.at("RR", "+V") + t.at("LL", "+V") +
          t.at("RR", "-H") + t.at("LL", "-H") + t.at("RL", "-V") + t.at("LR", "-V")) /
         4.0;
}

ProcessBounds process_bounds(double f1, double f2) {
  ProcessBounds b{f1 + f2 - 1.0, std::min(f1, f2), false};
  b.entangling = b.lo > 0.5;
  return b;
}

bool quantum_parallelism(double f1, double f2, double f3) {
  return (f1 + f2 + f3) / 3.0 > 2.0 / 3.0;
}

FidelityReport fidelity_report(const ProbabilityTable& a,
                               const ProbabilityTable& b,
                               const ProbabilityTable& c, double bell_f,
                               std::string provenance) {
  FidelityReport r;
  r.f1 = hofmann_f1(a);
  r.f2 = hofmann_f2(b);
  r.f3 = hofmann_f3(c);
  const auto pb = process_bounds(r.f1, r.f2);
  r.proc_lo = pb.lo;
  r.proc_hi = pb.hi;
  r.entangling = pb.entangling;
  r.avg_gate = (r.f1 + r.f2 + r.f3) / 3.0;
  r.parallelism = quantum_parallelism(r.f1, r.f2, r.f3);
  r.bell_f = bell_f;
  for (double v : {r.f1, r.f2, r.f3, r.avg_gate, r.bell_f}) {
    if (v < 0.0 || v > 1.0) r.out_of_range = true;
  }
  r.provenance = std::move(provenance);
  return r;
}

double psi_minus_fidelity(double p_pop, double sxx, double syy) {
  if (!(p_pop >= 0.0 && p_pop <= 1.0)) throw Error("population outside [0, 1]");
  if (!(sxx >= -1.0 && sxx <= 1.0) || !(syy >= -1.0 && syy <= 1.0)) {
    throw Error("correlator outside [-1, 1]");
  }
  const double coherence = -(sxx + syy) / 2.0;
  return (p_pop + coherence) / 2.0;
}

double ghz_fidelity(int n, double population,
                    const std::vector<double>& correlations) {
  if (n < 2) throw Error("GHZ fidelity needs N >= 2");
  if (correlations.size() != static_cast<std::size_t>(n)) {
    throw Error("GHZ fidelity needs N correlations");
  }
  double c = 0.0;
  for (int k = 0; k < n; ++k) {
    c += (k % 2 == 0 ? 1.0 : -1.0) * correlations[static_cast<std::size_t>(k)];
  }
  return (population + c / n) / 2.0;
}

double ensemble_fidelity(const StateVector& target, const MixedEnsemble& e) {
  const double tn = target.norm2();
  if (tn == 0.0) return 0.0;
  double f = 0.0;
  for (const auto& b : e.branches()) {
    f += b.weight * std::norm(inner_product(target, b.state)) / tn;
  }
  return f;
}

// --------------------------------------------------------- simulated runs

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::F1: return "f1";
    case Protocol::F2: return "f2";
    case Protocol::F3: return "f3";
  }
  return "f1";
}

Protocol parse_protocol(std::string_view s) {
  if (s == "f1") return Protocol::F1;
  if (s == "f2") return Protocol::F2;
  if (s == "f3") return Protocol::F3;
  throw Error("unknown protocol '" + std::string(s) + "'");
}

namespace {

Jones jones_of(char c) {
  switch (c) {
    case 'H': return jones::H();
    case 'V': return jones::V();
    case '+': return jones::plus();
    case '-': return jones::minus();
    case 'R': return jones::R();
    case 'L': return jones::L();
    default: break;
  }
  throw Error(std::string("unknown polarization '") + c + "'");
}

PolarizationBasis analyzer_basis(TableBasis b, int qubit) {
  switch (b) {
    case TableBasis::HV: return PolarizationBasis::hv();
    case TableBasis::DA: return PolarizationBasis::da();
    case TableBasis::RL: return PolarizationBasis::rl();
    case TableBasis::DAHV:
      return qubit == 0 ? PolarizationBasis::da() : PolarizationBasis::hv();
  }
  return PolarizationBasis::hv();
}

int reading(const ClickPattern& p, const char* id) {
  auto it = p.find(id);
  return it == p.end() ? 0 : it->second;
}

// Four-fold coincidence probabilities for the four output labels
// (t/r of the control analyzer times t/r of the target analyzer).
std::array<double, 4> fourfold(const Network& gate, const SourceModel& source,
                               const DetectorModel& det, Jones control,
                               Jones target, const PolarizationBasis& bc,
                               const PolarizationBasis& bt) {
  const Network net = with_output_analyzers(gate, bc, bt);
  const auto ensemble = source_ensemble(
      gate_sources(control[0], control[1], target[0], target[1]), source);
  const auto dist = outcome_distribution(net, ensemble, det);
  std::array<double, 4> p{};
  for (const auto& [pat, e] : dist) {
    if (!is_phi_plus_herald(pat)) continue;
    const int ct = reading(pat, "C_t"), cr = reading(pat, "C_r");
    const int tt = reading(pat, "T_t"), tr = reading(pat, "T_r");
    if (ct + cr != 1 || tt + tr != 1) continue;
    p[static_cast<std::size_t>(2 * cr + tr)] += e.probability;
  }
  return p;
}

}  // namespace

ProbabilityTable simulate_tomography(const Network& net,
                                     const SourceModel& source,
                                     const DetectorModel& det,
                                     Protocol protocol) {
  TableBasis bin = TableBasis::HV, bout = TableBasis::HV;
  switch (protocol) {
    case Protocol::F1: break;
    case Protocol::F2: bin = bout = TableBasis::DA; break;
    case Protocol::F3:
      bin = TableBasis::DAHV;
      bout = TableBasis::RL;
      break;
  }
  ProbabilityTable::Grid cells{};
  const auto& inputs = basis_labels(bin);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto p = fourfold(net, source, det, jones_of(inputs[i][0]),
                            jones_of(inputs[i][1]), analyzer_basis(bout, 0),
                            analyzer_basis(bout, 1));
    double total = 0.0;
    for (double v : p) total += v;
    if (total <= 0.0) throw Error("no heralds");
    for (std::size_t o = 0; o < 4; ++o) cells[o][i] = p[o] / total;
  }
  return {bin, bout, cells, 1e-9};
}

BellEstimate simulate_bell(const Network& net, const SourceModel& source,
                           const DetectorModel& det) {
  const Jones c = jones::minus(), t = jones::V();
  auto normalized = [&](const PolarizationBasis& b) {
    auto p = fourfold(net, source, det, c, t, b, b);
    double total = 0.0;
    for (double v : p) total += v;
    if (total <= 0.0) throw Error("no heralds");
    for (double& v : p) v /= total;
    return p;
  };
  const auto hv = normalized(PolarizationBasis::hv());
  const auto da = normalized(PolarizationBasis::da());
  const auto rl = normalized(PolarizationBasis::rl());
  BellEstimate b;
  b.population = hv[1] + hv[2];
  b.sxx = da[0] + da[3] - da[1] - da[2];
  b.syy = rl[0] + rl[3] - rl[1] - rl[2];
  b.fidelity = psi_minus_fidelity(std::clamp(b.population, 0.0, 1.0),
                                  std::clamp(b.sxx, -1.0, 1.0),
                                  std::clamp(b.syy, -1.0, 1.0));
  return b;
}

}  // namespace heraldix
