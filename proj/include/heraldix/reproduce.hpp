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

#include <string>
#include <vector>

namespace heraldix {

struct CheckResult {
  std::string id;      // "1".."11" for the acceptance items, "printed:<name>"
  std::string title;
  bool pass = false;
  std::string detail;  // computed values, diffs
};

struct ReproduceOptions {
  std::string golden_dir;
  /// Extra slack added to half a unit of the printed last digit when
  /// comparing computed values against printed ones.
  double tolerance = 0.0025;
  unsigned jobs = 1;
};

/// Reference table files inside a golden directory.
inline constexpr const char* kGoldenTableFiles[3] = {
    "table_s1_a.csv", "table_s1_b.csv", "table_s1_c.csv"};

/// Runs every acceptance item and the printed-number comparisons. Throws
/// ConfigError if a golden file is missing or unreadable; a golden file
/// that parses but differs from the reference table is a failed check with
/// the differing cells in `detail`.
std::vector<CheckResult> reproduce_paper(const ReproduceOptions& opts);

}  // namespace heraldix
