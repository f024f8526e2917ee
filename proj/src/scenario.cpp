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

#include "heraldix/scenario.hpp"

#include <cmath>
#include <cstdio>

#include "heraldix/error.hpp"
#include "json.hpp"

namespace heraldix {

using nlohmann::json;

namespace {

bool take_prefix(std::string_view& s, std::string_view& tok) {
  for (std::string_view t : {"plus", "minus", "H", "V", "R", "L"}) {
    if (s.substr(0, t.size()) == t) {
      tok = t;
      s.remove_prefix(t.size());
      return true;
    }
  }
  return false;
}

Jones named_jones(std::string_view t) {
  if (t == "H") return jones::H();
  if (t == "V") return jones::V();
  if (t == "plus") return jones::plus();
  if (t == "minus") return jones::minus();
  if (t == "R") return jones::R();
  return jones::L();
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError("unknown key '" + k + "' in " + where);
  }
}

Complex complex_from(const json& v, const char* name) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError(std::string("amplitude '") + name + "' must be a number or [re, im]");
}

double unit_value(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) throw ConfigError(std::string(key) + " must be a number");
  const double v = obj.at(key).get<double>();
  if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string(key) + " outside [0, 1]");
  return v;
}

void check_normalized(Complex a, Complex b, const char* which) {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-9) {
    throw ConfigError(std::string(which) + " amplitudes not normalized");
  }
}

}  // namespace

GateInput parse_gate_input(std::string_view name) {
  std::string_view rest = name;
  std::string_view c, t;
  if (!take_prefix(rest, c) || !take_prefix(rest, t) || !rest.empty()) {
    throw ConfigError("unknown input preset '" + std::string(name) + "'");
  }
  const Jones jc = named_jones(c), jt = named_jones(t);
  return {jc[0], jc[1], jt[0], jt[1]};
}

std::vector<double> parse_grid(std::string_view text) {
  auto num = [&](std::string s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad grid value '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("bad grid value '" + s + "'");
    return v;
  };
  std::vector<double> out;
  const std::string s(text);
  if (s.empty()) throw ConfigError("empty grid");
  if (s.find(':') != std::string::npos) {
    const auto a = s.find(':');
    const auto b = s.find(':', a + 1);
    if (b == std::string::npos || s.find(':', b + 1) != std::string::npos) {
      throw ConfigError("range grid must be start:stop:step");
    }
    const double start = num(s.substr(0, a));
    const double stop = num(s.substr(a + 1, b - a - 1));
    const double step = num(s.substr(b + 1));
    if (!(step > 0.0) || stop < start) throw ConfigError("range grid needs step > 0 and stop >= start");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 0.5));
    if (n > 100000) throw ConfigError("grid too large");
    for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  } else {
    std::size_t start = 0;
    while (start <= s.size()) {
      auto end = s.find(',', start);
      if (end == std::string::npos) end = s.size();
      out.push_back(num(s.substr(start, end - start)));
      start = end + 1;
    }
  }
  return out;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

Scenario parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  Scenario sc;
  try {
    check_keys(root, {"schema", "input_state", "source", "detector", "network", "demux", "sweep"},
               "scenario");
    if (!root.contains("schema") || root.at("schema") != kScenarioSchema) {
      throw ConfigError(std::string("scenario schema must be \"") + kScenarioSchema + "\"");
    }
    if (root.contains("input_state")) {
      const auto& in = root.at("input_state");
      if (in.is_string()) {
        sc.input = parse_gate_input(in.get<std::string>());
      } else {
        check_keys(in, {"alpha", "beta", "gamma", "delta"}, "input_state");
        for (const char* k : {"alpha", "beta", "gamma", "delta"}) {
          if (!in.contains(k)) throw ConfigError(std::string("input_state needs ") + k);
        }
        sc.input = {complex_from(in.at("alpha"), "alpha"), complex_from(in.at("beta"), "beta"),
                    complex_from(in.at("gamma"), "gamma"), complex_from(in.at("delta"), "delta")};
        check_normalized(sc.input.alpha, sc.input.beta, "control");
        check_normalized(sc.input.gamma, sc.input.delta, "target");
      }
    }
    if (root.contains("source")) {
      const auto& s = root.at("source");
      check_keys(s, {"eta_s", "overlap_x"}, "source");
      sc.source.eta_s = unit_value(s, "eta_s", 1.0);
      sc.source.overlap_x = unit_value(s, "overlap_x", 1.0);
    }
    if (root.contains("detector")) {
      const auto& d = root.at("detector");
      check_keys(d, {"kind", "eta_d", "k", "click_model"}, "detector");
      try {
        sc.detector.kind = parse_detector_kind(d.value("kind", std::string("ideal_pnrd")));
        sc.detector.click = parse_click_model(d.value("click_model", std::string("fixed")));
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
      sc.detector.eta_d = unit_value(d, "eta_d", 1.0);
      sc.detector.k = d.value("k", sc.detector.kind == DetectorKind::PseudoPnrd ? 4 : 1);
      if (sc.detector.k < 1) throw ConfigError("detector k must be >= 1");
    }
    if (root.contains("network")) {
      const auto& n = root.at("network");
      check_keys(n, {"hwp"}, "network");
      sc.with_hwp = n.value("hwp", true);
    }
    if (root.contains("demux")) {
      const auto& d = root.at("demux");
      check_keys(d, {"laser_rep_hz", "cycle_len", "channels", "pc_rep_hz", "eta_f", "eta_w",
                     "eta_l", "pulses"},
                 "demux");
      sc.demux.laser_rep_hz = d.value("laser_rep_hz", sc.demux.laser_rep_hz);
      sc.demux.cycle_len = d.value("cycle_len", sc.demux.cycle_len);
      sc.demux.channels = d.value("channels", sc.demux.channels);
      sc.demux.pc_rep_hz = d.value("pc_rep_hz", sc.demux.pc_rep_hz);
      sc.demux.eta_f = unit_value(d, "eta_f", 1.0);
      sc.demux.eta_w = unit_value(d, "eta_w", 1.0);
      sc.demux.eta_l = unit_value(d, "eta_l", 1.0);
      sc.pulses = d.value("pulses", static_cast<std::int64_t>(sc.demux.cycle_len));
      try {
        sc.demux.validate();
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
    }
    if (root.contains("sweep")) {
      const auto& s = root.at("sweep");
      check_keys(s, {"etas", "detector"}, "sweep");
      if (s.contains("etas")) {
        const auto& e = s.at("etas");
        if (e.is_string()) {
          sc.etas = parse_grid(e.get<std::string>());
        } else {
          sc.etas = e.get<std::vector<double>>();
        }
      }
      sc.sweep_detector = s.value("detector", sc.sweep_detector);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  return sc;
}

}  // namespace heraldix
