// Copyright 2026 The lmdlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "lmdlab/cli/runner.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace lmdlab;

TEST_SUITE("property") {

TEST_CASE("bundled scenarios are byte-identical across repeated runs") {
  REQUIRE(oracle::bundled_scenarios().size() == 10);
  const auto r = oracle::bundled_determinism(3);
  CHECK_MESSAGE(r.ok(), r.first_failure);
  CHECK(r.cases == 20);
}

TEST_CASE("serial and parallel evaluation give the same report") {
  for (const auto& f : oracle::bundled_scenarios()) {
    CAPTURE(f.string());
    const cli::Scenario s = cli::load_scenario(f);
    cli::RunOptions serial;
    serial.exec = eq::Execution::Serial;
    CHECK(cli::render(cli::run_scenario(s, serial), cli::Format::Json) ==
          cli::render(cli::run_scenario(s), cli::Format::Json));
  }
}

TEST_CASE("no honest or rational equivocation in any bundled scenario") {
  const auto r = oracle::bundled_no_honest_equivocation(40);
  CHECK_MESSAGE(r.ok(), r.first_failure);
  CHECK(r.cases > 300);
}

}  // TEST_SUITE
