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

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "heraldix/error.hpp"
#include "heraldix/fidelity.hpp"
#include "heraldix/reproduce.hpp"

using namespace heraldix;
namespace fs = std::filesystem;

namespace {
const CheckResult& find(const std::vector<CheckResult>& r, const std::string& id) {
  for (const auto& c : r) {
    if (c.id == id) return c;
  }
  throw std::runtime_error("no check " + id);
}

fs::path golden_copy(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("heraldix_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  const char which[3] = {'a', 'b', 'c'};
  for (int i = 0; i < 3; ++i) {
    std::ofstream(dir / kGoldenTableFiles[i]) << reference_table(which[i]).to_csv_grid();
  }
  return dir;
}
}  // namespace

TEST_CASE("missing golden files are configuration errors", "[reproduce]") {
  ReproduceOptions o;
  o.golden_dir = (fs::temp_directory_path() / "heraldix_nowhere").string();
  CHECK_THROWS_AS(reproduce_paper(o), ConfigError);
}

TEST_CASE("golden tables and printed values", "[reproduce]") {
  ReproduceOptions o;
  o.golden_dir = golden_copy("ok").string();
  o.jobs = 4;
  const auto r = reproduce_paper(o);
  CHECK(find(r, "golden").pass);
  for (const char* id : {"1", "2", "3", "4", "5", "7", "8", "9", "10", "11"}) {
    INFO(id);
    CHECK(find(r, id).pass);
  }
  CHECK(find(r, "printed:F3").pass);

  o.tolerance = 0.0;
  const auto strict = reproduce_paper(o);
  CHECK_FALSE(find(strict, "printed:F3").pass);
  CHECK(find(strict, "printed:F2").pass);
}

TEST_CASE("a corrupted golden cell is reported", "[reproduce]") {
  const auto dir = golden_copy("bad");
  auto cells = reference_table('b').cells();
  cells[0][0] -= 0.002;
  cells[2][0] += 0.002;
  std::ofstream(dir / kGoldenTableFiles[1])
      << ProbabilityTable(TableBasis::DA, TableBasis::DA, cells).to_csv_grid();
  ReproduceOptions o;
  o.golden_dir = dir.string();
  const auto r = reproduce_paper(o);
  const auto& g = find(r, "golden");
  CHECK_FALSE(g.pass);
  CHECK(g.detail.find("P(++|++)") != std::string::npos);
}
