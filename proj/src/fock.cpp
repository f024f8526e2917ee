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

#include "heraldix/fock.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "heraldix/error.hpp"
#include "json.hpp"

namespace heraldix {

namespace {

struct NamedPath {
  std::string_view name;
  Path path;
};

// Aliases (c_out, t_out) come after the canonical numeric spelling so that
// path_name() prints 1 and 4.
constexpr std::array<NamedPath, 8> kNamedPaths{{
    {"c_in", paths::c_in},
    {"a1", paths::a1},
    {"a2", paths::a2},
    {"t_in", paths::t_in},
    {"2'", paths::p2_out},
    {"3'", paths::p3_out},
    {"c_out", paths::c_out},
    {"t_out", paths::t_out},
}};

bool on_any(Path p, std::span<const Path> set) {
  return std::find(set.begin(), set.end(), p) != set.end();
}

}  // namespace

std::string path_name(Path p) {
  for (const auto& np : kNamedPaths) {
    if (np.path == p && np.name != "c_out" && np.name != "t_out") {
      return std::string(np.name);
    }
  }
  return std::to_string(p.id);
}

Path parse_path(std::string_view name) {
  for (const auto& np : kNamedPaths) {
    if (np.name == name) return np.path;
  }
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), value);
  if (ec != std::errc{} || ptr != name.data() + name.size() || value > 0xFFFF) {
    throw Error("unknown path label '" + std::string(name) + "'");
  }
  return Path{static_cast<std::uint16_t>(value)};
}

char pol_char(Pol p) { return p == Pol::H ? 'H' : 'V'; }

namespace jones {
Jones H() { return {1.0, 0.0}; }
Jones V() { return {0.0, 1.0}; }
Jones plus() { return {M_SQRT1_2, M_SQRT1_2}; }
Jones minus() { return {M_SQRT1_2, -M_SQRT1_2}; }
Jones R() { return {M_SQRT1_2, Complex(0.0, M_SQRT1_2)}; }
Jones L() { return {M_SQRT1_2, Complex(0.0, -M_SQRT1_2)}; }
double norm2(const Jones& j) { return std::norm(j[0]) + std::norm(j[1]); }
Complex inner(const Jones& a, const Jones& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}
}  // namespace jones

// ---------------------------------------------------------------- FockState

FockState FockState::from_occupation(
    std::span<const std::pair<Mode, int>> occupation) {
  FockState f;
  for (const auto& [mode, n] : occupation) {
    if (n < 0) throw Error("negative photon count");
    for (int i = 0; i < n; ++i) f = f.with_photon(mode);
  }
  return f;
}

int FockState::count(const Mode& m) const {
  auto ph = photons();
  auto [lo, hi] = std::equal_range(ph.begin(), ph.end(), m);
  return static_cast<int>(hi - lo);
}

int FockState::path_count(Path p) const {
  int n = 0;
  for (const auto& m : photons()) n += (m.path == p);
  return n;
}

std::vector<std::pair<Mode, int>> FockState::occupation() const {
  std::vector<std::pair<Mode, int>> out;
  for (const auto& m : photons()) {
    if (!out.empty() && out.back().first == m) {
      ++out.back().second;
    } else {
      out.emplace_back(m, 1);
    }
  }
  return out;
}

FockState FockState::with_photon(const Mode& m) const {
  if (size_ >= kMaxPhotons) {
    throw Error("photon number exceeds " + std::to_string(kMaxPhotons));
  }
  FockState f = *this;
  auto pos = std::upper_bound(f.modes_.begin(), f.modes_.begin() + f.size_, m);
  std::move_backward(pos, f.modes_.begin() + f.size_,
                     f.modes_.begin() + f.size_ + 1);
  *pos = m;
  ++f.size_;
  return f;
}

FockState FockState::without_photon(const Mode& m) const {
  FockState f = *this;
  auto end = f.modes_.begin() + f.size_;
  auto pos = std::lower_bound(f.modes_.begin(), end, m);
  if (pos == end || *pos != m) throw Error("annihilating an empty mode");
  std::move(pos + 1, end, pos);
  --f.size_;
  f.modes_[f.size_] = Mode{};
  return f;
}

double FockState::occupation_factorial() const {
  double prod = 1.0;
  int run = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    run = (i > 0 && modes_[i] == modes_[i - 1]) ? run + 1 : 1;
    prod *= run;
  }
  return prod;
}

std::pair<FockState, FockState> FockState::split(
    std::span<const Path> selected) const {
  FockState in, out;
  for (const auto& m : photons()) {
    // Photons arrive sorted, so appending keeps both halves canonical.
    FockState& dst = on_any(m.path, selected) ? in : out;
    dst.modes_[dst.size_++] = m;
  }
  return {in, out};
}

std::string to_string(const FockState& f) {
  if (f.photon_count() == 0) return "|vac>";
  std::ostringstream os;
  os << '|';
  bool first = true;
  for (const auto& [m, n] : f.occupation()) {
    if (!first) os << ' ';
    first = false;
    os << pol_char(m.pol) << '_' << path_name(m.path);
    if (m.internal != 0) os << '#' << int(m.internal);
    if (n > 1) os << '^' << n;
  }
  os << '>';
  return os.str();
}

// -------------------------------------------------------------- StateVector

StateVector StateVector::vacuum(double tolerance) {
  return basis(FockState{}, 1.0, tolerance);
}

StateVector StateVector::basis(const FockState& f, Complex amplitude,
                               double tolerance) {
  StateVector s(tolerance);
  s.add(f, amplitude);
  s.prune();
  return s;
}

Complex StateVector::amplitude(const FockState& f) const {
  auto it = terms_.find(f);
  return it == terms_.end() ? Complex{} : it->second;
}

double StateVector::norm2() const {
  double n = 0.0;
  for (const auto& [f, a] : terms_) n += std::norm(a);
  return n;
}

void StateVector::add(const FockState& f, Complex amplitude) {
  terms_[f] += amplitude;
}

void StateVector::prune() {
  std::erase_if(terms_, [this](const auto& kv) {
    return std::abs(kv.second) < tolerance_;
  });
}

StateVector StateVector::normalized() const {
  const double n = norm2();
  if (n == 0.0) return *this;
  return scaled(1.0 / std::sqrt(n));
}

StateVector StateVector::scaled(Complex factor) const {
  StateVector out(tolerance_);
  for (const auto& [f, a] : terms_) out.terms_.emplace_hint(out.terms_.end(), f, a * factor);
  out.prune();
  return out;
}

StateVector operator+(const StateVector& a, const StateVector& b) {
  StateVector out = a;
  for (const auto& [f, amp] : b.terms_) out.add(f, amp);
  out.prune();
  return out;
}

StateVector operator-(const StateVector& a, const StateVector& b) {
  return a + b.scaled(-1.0);
}

std::string to_string(const StateVector& s) {
  if (s.is_zero()) return "0";
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& [f, a] : s.terms()) {
    if (!first) os << " + ";
    first = false;
    os << '(' << a.real() << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag())
       << "i)" << to_string(f);
  }
  return os.str();
}

// ------------------------------------------------------------ MixedEnsemble

MixedEnsemble::MixedEnsemble(std::vector<Branch> branches)
    : branches_(std::move(branches)) {
  double total = 0.0;
  for (const auto& b : branches_) {
    if (b.weight < 0.0) throw Error("negative branch weight");
    if (b.state.norm2() > 1.0 + 1e-9) throw Error("branch state norm exceeds 1");
    total += b.weight;
  }
  if (total > 1.0 + 1e-12) throw Error("ensemble weights exceed 1");
}

MixedEnsemble MixedEnsemble::pure(StateVector s) {
  return MixedEnsemble({Branch{1.0, std::move(s)}});
}

double MixedEnsemble::total_weight() const {
  double total = 0.0;
  for (const auto& b : branches_) total += b.weight;
  return total;
}

// --------------------------------------------------------------- operations

StateVector create(const StateVector& s, const Mode& mode, Complex coeff) {
  StateVector out(s.tolerance());
  for (const auto& [f, a] : s.terms()) {
    const int n = f.count(mode);
    out.add(f.with_photon(mode), a * coeff * std::sqrt(double(n + 1)));
  }
  out.prune();
  return out;
}

StateVector create_photon(const StateVector& s, Path path, const Jones& pol,
                          std::uint8_t internal) {
  StateVector out(s.tolerance());
  for (Pol p : {Pol::H, Pol::V}) {
    const Complex c = pol[static_cast<int>(p)];
    if (c == Complex{}) continue;
    const Mode mode{path, p, internal};
    for (const auto& [f, a] : s.terms()) {
      out.add(f.with_photon(mode), a * c * std::sqrt(double(f.count(mode) + 1)));
    }
  }
  out.prune();
  return out;
}

StateVector make_product_input(std::span<const PhotonSpec> specs,
                               double tolerance) {
  std::vector<Path> seen;
  for (const auto& spec : specs) {
    if (on_any(spec.path, seen)) throw Error("path collision");
    seen.push_back(spec.path);
    if (std::abs(jones::norm2(spec.pol) - 1.0) > 1e-9) {
      throw Error("invalid polarization");
    }
    if (spec.overlap < 0.0 || spec.overlap > 1.0) {
      throw Error("overlap outside [0, 1]");
    }
  }
  StateVector s = StateVector::vacuum(tolerance);
  for (const auto& spec : specs) {
    if (spec.overlap >= 1.0 || spec.internal == 0) {
      s = create_photon(s, spec.path, spec.pol, 0);
      continue;
    }
    const double shared = std::sqrt(spec.overlap);
    const double own = std::sqrt(1.0 - spec.overlap);
    Jones shared_pol{spec.pol[0] * shared, spec.pol[1] * shared};
    Jones own_pol{spec.pol[0] * own, spec.pol[1] * own};
    s = create_photon(s, spec.path, shared_pol, 0) +
        create_photon(s, spec.path, own_pol, spec.internal);
  }
  return s;
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  Complex acc{};
  for (const auto& [f, amp] : small.terms()) {
    auto it = large.terms().find(f);
    if (it == large.terms().end()) continue;
    acc += (&small == &a) ? std::conj(amp) * it->second
                          : std::conj(it->second) * amp;
  }
  return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
  const double na = a.norm2();
  const double nb = b.norm2();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::norm(inner_product(a, b)) / (na * nb);
}

StateVector project_photon_counts(const StateVector& s,
                                  const std::map<Path, int>& counts) {
  StateVector out(s.tolerance());
  for (const auto& [f, a] : s.terms()) {
    bool match = true;
    for (const auto& [p, n] : counts) {
      if (f.path_count(p) != n) {
        match = false;
        break;
      }
    }
    if (match) out.add(f, a);
  }
  out.prune();
  return out;
}

std::map<std::vector<int>, double> path_count_distribution(
    const StateVector& s, std::span<const Path> on_paths) {
  std::map<std::vector<int>, double> dist;
  std::vector<int> key(on_paths.size());
  for (const auto& [f, a] : s.terms()) {
    for (std::size_t i = 0; i < on_paths.size(); ++i) {
      key[i] = f.path_count(on_paths[i]);
    }
    dist[key] += std::norm(a);
  }
  return dist;
}

StateVector project_onto(const StateVector& bra, const StateVector& ket,
                         std::span<const Path> measured) {
  StateVector out(ket.tolerance());
  for (const auto& [f, a] : ket.terms()) {
    auto [on, rest] = f.split(measured);
    const Complex b = bra.amplitude(on);
    if (b == Complex{}) continue;
    out.add(rest, std::conj(b) * a);
  }
  out.prune();
  return out;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
  std::vector<Path> used;
  for (const auto& [f, _] : a.terms()) {
    for (const Mode& m : f.photons()) used.push_back(m.path);
  }
  StateVector out(std::min(a.tolerance(), b.tolerance()));
  for (const auto& [fb, ab] : b.terms()) {
    for (const Mode& m : fb.photons()) {
      if (on_any(m.path, used)) throw Error("path collision");
    }
    for (const auto& [fa, aa] : a.terms()) {
      if (fa.photon_count() + fb.photon_count() > kMaxPhotons) {
        throw Error("too many photons");
      }
      FockState f = fa;
      for (const Mode& m : fb.photons()) f = f.with_photon(m);
      out.add(f, aa * ab);
    }
  }
  out.prune();
  return out;
}

StateVector restrict_to_paths(const StateVector& s,
                              std::span<const Path> kept) {
  StateVector out(s.tolerance());
  for (const auto& [f, a] : s.terms()) {
    auto [on, rest] = f.split(kept);
    if (rest.photon_count() == 0) out.add(f, a);
  }
  out.prune();
  return out;
}

// --------------------------------------------------------------------- JSON

std::string to_json(const StateVector& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [f, a] : s.terms()) {
    nlohmann::json occ = nlohmann::json::array();
    for (const auto& [m, n] : f.occupation()) {
      occ.push_back({path_name(m.path), std::string(1, pol_char(m.pol)),
                     int(m.internal), n});
    }
    arr.push_back({{"occupation", occ}, {"re", a.real()}, {"im", a.imag()}});
  }
  return arr.dump();
}

StateVector state_from_json(std::string_view text, double tolerance) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("state JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error("state JSON: expected an array of terms");
  StateVector s(tolerance);
  for (const auto& term : doc) {
    std::vector<std::pair<Mode, int>> occ;
    for (const auto& entry : term.at("occupation")) {
      if (!entry.is_array() || entry.size() != 4) {
        throw Error("state JSON: occupation entries are [path,pol,internal,count]");
      }
      Path path = entry[0].is_string()
                      ? parse_path(entry[0].get<std::string>())
                      : Path{entry[0].get<std::uint16_t>()};
      const std::string pol = entry[1].get<std::string>();
      if (pol != "H" && pol != "V") throw Error("state JSON: bad polarization");
      occ.emplace_back(Mode{path, pol == "H" ? Pol::H : Pol::V,
                            entry[2].get<std::uint8_t>()},
                       entry[3].get<int>());
    }
    s.add(FockState::from_occupation(occ),
          Complex(term.at("re").get<double>(), term.at("im").get<double>()));
  }
  s.prune();
  return s;
}

}  // namespace heraldix
