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

#include <stdexcept>

#include "heraldix/parallel.hpp"

using namespace heraldix;

TEST_CASE("results keep index order", "[parallel]") {
  for (unsigned jobs : {1u, 3u, 16u}) {
    const auto v = parallel_map<int>(50, jobs, [](std::size_t i) { return int(i * i); });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == int(i * i));
  }
}

TEST_CASE("worker exceptions propagate", "[parallel]") {
  auto f = [](std::size_t i) -> int {
    if (i == 7) throw std::runtime_error("boom");
    return 0;
  };
  CHECK_THROWS_WITH(parallel_map<int>(20, 4, f), "boom");
  CHECK(parallel_map<int>(0, 4, f).empty());
}
