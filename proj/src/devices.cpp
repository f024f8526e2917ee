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

#include "heraldix/devices.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "heraldix/error.hpp"

namespace heraldix {

namespace {

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

void SourceModel::validate() const {
  if (!in_unit(eta_s)) throw Error("eta_s outside [0, 1]");
  if (!in_unit(overlap_x)) throw Error("overlap_x outside [0, 1]");
}

std::string to_string(DetectorKind k) {
  switch (k) {
    case DetectorKind::IdealPnrd: return "ideal_pnrd";
    case DetectorKind::Standard: return "standard";
    case DetectorKind::PseudoPnrd: return "pseudo_pnrd";
  }
  return "ideal_pnrd";
}

DetectorKind parse_detector_kind(std::string_view s) {
  if (s == "ideal_pnrd" || s == "ideal" || s == "ide") return DetectorKind::IdealPnrd;
  if (s == "standard" || s == "sta") return DetectorKind::Standard;
  if (s == "pseudo_pnrd" || s == "pseudo" || s == "pse") return DetectorKind::PseudoPnrd;
  throw Error("unknown detector kind '" + std::string(s) + "'");
}

std::string to_string(ClickModel c) {
  return c == ClickModel::Fixed ? "fixed" : "physical";
}

ClickModel parse_click_model(std::string_view s) {
  if (s == "fixed") return ClickModel::Fixed;
  if (s == "physical") return ClickModel::Physical;
  throw Error("unknown click model '" + std::string(s) + "'");
}

int DetectorModel::max_reading() const {
  switch (kind) {
    case DetectorKind::IdealPnrd: return kMaxPhotons;
    case DetectorKind::Standard: return 1;
    case DetectorKind::PseudoPnrd: return std::min(k, kMaxPhotons);
  }
  return kMaxPhotons;
}

void DetectorModel::validate() const {
  if (!in_unit(eta_d)) throw Error("eta_d outside [0, 1]");
  if (kind == DetectorKind::PseudoPnrd && k < 1) {
    throw Error("pseudo-PNRD needs k >= 1");
  }
}

std::vector<double> pnrd_response(int n, const DetectorModel& model) {
  model.validate();
  if (n < 0 || n > kMaxPhotons) {
    throw Error("photon number " + std::to_string(n) + " outside [0, " +
                std::to_string(kMaxPhotons) + "]");
  }
  std::vector<double> p(static_cast<std::size_t>(model.max_reading()) + 1, 0.0);
  if (model.kind == DetectorKind::IdealPnrd) {
    p[static_cast<std::size_t>(n)] = 1.0;
    return p;
  }

  const int elements = model.kind == DetectorKind::Standard ? 1 : model.k;
  auto click_prob = [&](int photons) {
    if (photons == 0) return 0.0;
    return model.click == ClickModel::Fixed
               ? model.eta_d
               : 1.0 - std::pow(1.0 - model.eta_d, photons);
  };

  // Dynamic programme over elements: state (photons placed, clicks so far)
  // carries sum of prod 1/b_i! over placements; the multinomial prefactor
  // n!/k^n is applied at the end.
  const int max_clicks = std::min(elements, n);
  std::vector<std::vector<double>> dp(
      static_cast<std::size_t>(n) + 1,
      std::vector<double>(static_cast<std::size_t>(max_clicks) + 1, 0.0));
  dp[0][0] = 1.0;
  for (int e = 0; e < elements; ++e) {
    auto next = dp;
    for (auto& row : next) std::fill(row.begin(), row.end(), 0.0);
    for (int placed = 0; placed <= n; ++placed) {
      for (int c = 0; c <= max_clicks; ++c) {
        const double w = dp[placed][c];
        if (w == 0.0) continue;
        for (int b = 0; placed + b <= n; ++b) {
          const double share = w / factorial(b);
          const double q = click_prob(b);
          next[placed + b][c] += share * (1.0 - q);
          if (q > 0.0 && c + 1 <= max_clicks) next[placed + b][c + 1] += share * q;
        }
      }
    }
    dp = std::move(next);
  }
  const double prefactor = factorial(n) / std::pow(double(elements), n);
  for (int c = 0; c <= max_clicks; ++c) {
    p[static_cast<std::size_t>(c)] = dp[n][c] * prefactor;
  }
  return p;
}

std::vector<std::vector<double>> response_kernel(const DetectorModel& model,
                                                 int max_n) {
  std::vector<std::vector<double>> rows;
  for (int n = 0; n <= max_n; ++n) rows.push_back(pnrd_response(n, model));
  return rows;
}

std::vector<unsigned> source_ensemble_masks(std::size_t n_sources,
                                            const SourceModel& model) {
  std::vector<unsigned> masks;
  const unsigned full = (1u << n_sources) - 1u;
  // Full survival first: the dominant branch for good sources.
  for (unsigned k = 0; k <= full; ++k) {
    const unsigned mask = full - k;
    const int present = std::popcount(mask);
    const int lost = static_cast<int>(n_sources) - present;
    const double w = std::pow(model.eta_s, present) * std::pow(1.0 - model.eta_s, lost);
    if (w > 0.0) masks.push_back(mask);
  }
  return masks;
}

MixedEnsemble source_ensemble(std::span<const SourceSpec> specs,
                              const SourceModel& model, double tolerance) {
  model.validate();
  if (specs.size() > static_cast<std::size_t>(kMaxPhotons)) {
    throw Error("too many sources");
  }
  std::vector<Branch> branches;
  for (unsigned mask : source_ensemble_masks(specs.size(), model)) {
    std::vector<PhotonSpec> present;
    for (std::size_t i = 0; i < specs.size(); ++i) {
      if (mask & (1u << i)) {
        present.push_back({specs[i].path, specs[i].pol,
                           static_cast<std::uint8_t>(i + 1), model.overlap_x});
      }
    }
    const int n_present = std::popcount(mask);
    const double w = std::pow(model.eta_s, n_present) *
                     std::pow(1.0 - model.eta_s, int(specs.size()) - n_present);
    branches.push_back({w, make_product_input(present, tolerance)});
  }
  return MixedEnsemble(std::move(branches));
}

}  // namespace heraldix
