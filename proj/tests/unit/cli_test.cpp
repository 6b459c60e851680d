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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "lmdlab/cli/runner.hpp"
#include "oracles.hpp"

using namespace lmdlab;
using namespace lmdlab::cli;

namespace {

namespace fs = std::filesystem;

const char* kMinimal = R"({"scenario": "mini", "game": {"kind": "simple", "W": 4, "W_p": 2}})";

fs::path temp_dir() {
  const fs::path d = fs::temp_directory_path() / "lmdlab_cli_test";
  fs::create_directories(d);
  return d;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = temp_dir() / name;
  std::ofstream(p) << text;
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LMDLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("minimal scenario parses with defaults") {
  const Scenario s = parse_scenario(kMinimal);
  CHECK(s.id == "mini");
  CHECK(s.analysis == Analysis::Game);
  CHECK(s.game.W == 4);
  CHECK(s.game.W_p == 2);
  CHECK_FALSE(s.seed.has_value());
  CHECK(s.checks.empty());
}

TEST_CASE("parse and validation errors") {
  CHECK_THROWS_AS(parse_scenario("{"), ParseError);
  CHECK_THROWS_AS(parse_scenario(""), ParseError);
  CHECK_THROWS_AS(
      parse_scenario(R"({"scenario": "x", "game": {"kind": "simple"}, "colour": 1})"),
      ValidationError);
  CHECK_THROWS_AS(parse_scenario(R"({"scenario": "x", "game": {"kind": "simple", "Wx": 4}})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_scenario(R"({"scenario": "x", "game": {"kind": "chess"}})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_scenario(R"({"scenario": "x"})"), ValidationError);
  CHECK_THROWS_AS(parse_scenario(R"({"scenario": "x", "game": {"kind": "simple"},
                                     "checks": [{"type": "poker"}]})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_scenario(R"({"scenario": "x", "game": {"kind": "simple"},
                                     "checks": [{"type": "dominance"}]})"),
                  ValidationError);
  CHECK_THROWS_AS(load_scenario(temp_dir() / "does-not-exist.json"), ParseError);
}

TEST_CASE("unknown strategies are rejected at run time") {
  const Scenario s = parse_scenario(
      R"({"scenario": "x", "game": {"kind": "simple", "W": 4, "W_p": 2},
          "profile": {"strategy": "nope"}})");
  CHECK_THROWS_AS(run_scenario(s), ValidationError);
}

TEST_CASE("exact amounts") {
  const Scenario s = parse_scenario(
      R"({"scenario": "q", "game": {"kind": "quantify", "mev_fail_eth": "0.082",
          "pool_share": "278/1000"}})");
  CHECK(s.quantify.mev_fail_eth == reward::Amount(82, 1000));
  CHECK(s.quantify.pool_share == reward::Amount(278, 1000));
  CHECK_THROWS_AS(
      parse_scenario(R"({"scenario": "q", "game": {"kind": "quantify", "pool_share": "1/0"}})"),
      ValidationError);
}

TEST_CASE("exit codes") {
  const auto ok = write_file("ok.json", kMinimal);
  CHECK(run_cli("run " + ok.string()) == 0);
  CHECK(run_cli("run simple-table1") == 0);
  CHECK(run_cli("run " + write_file("bad.json", "{ not json").string()) == 2);
  CHECK(run_cli("run " + write_file("unknown.json",
                                    R"({"scenario": "x", "game": {"kind": "simple"}, "y": 1})")
                             .string()) == 3);
  CHECK(run_cli("run " + write_file("cfg.json",
                                    R"({"scenario": "x", "game": {"kind": "simple", "W": 2, "W_p": 5}})")
                             .string()) == 3);
  const auto big = write_file(
      "big.json", R"({"scenario": "big", "game": {"kind": "simple", "W": 6, "W_p": 3},
                      "checks": [{"type": "nash", "max_coalition": 6}]})");
  CHECK(run_cli("run " + big.string() + " --max-joint-actions 10") == 4);
  CHECK(run_cli("run no-such-scenario") == 2);
  CHECK(run_cli("list") == 0);
}

TEST_CASE("exit code mapping") {
  CHECK(exit_code_of(ParseError("x")) == 2);
  CHECK(exit_code_of(ValidationError("x")) == 3);
  CHECK(exit_code_of(games::GameConfigError("x")) == 3);
  CHECK(exit_code_of(eq::ExplosionGuard("x")) == 4);
  CHECK(exit_code_of(std::runtime_error("x")) == 1);
}

TEST_CASE("bundled scenarios are listed in order") {
  const auto infos = list_scenarios({bundled_scenario_dir()});
  std::vector<std::string> ids;
  for (const auto& i : infos) ids.push_back(i.id);
  const std::vector<std::string> expected = {
      "dag-thm81",         "extended-spne",          "overhead-grid",
      "pool-simple-table7", "quantify-appendixB",    "selfish-table8",
      "simple-table1",     "strong-simple-table2",   "tendermint-anchor",
      "tendermint-withholding"};
  CHECK(ids == expected);
  for (const auto& i : infos) CHECK_FALSE(i.description.empty());

  const fs::path empty = temp_dir() / "empty";
  fs::create_directories(empty);
  CHECK(list_scenarios({bundled_scenario_dir(), empty}).size() == expected.size());

  const fs::path user = temp_dir() / "user";
  fs::create_directories(user);
  std::ofstream(user / "aaa.json") << R"({"scenario": "aaa", "game": {"kind": "simple"}})";
  const auto merged = list_scenarios({bundled_scenario_dir(), user});
  REQUIRE(merged.size() == expected.size() + 1);
  CHECK(merged.front().id == "aaa");
}

TEST_CASE("simple scenario report") {
  const auto r = run_scenario(load_scenario(bundled_scenario_dir() / "simple-table1.json"));
  const auto& cells = r.json["checks"][0]["cells"];
  CHECK(cells["succeed"]["C"] == "1");
  CHECK(cells["succeed"]["NC"] == "0");
  CHECK(cells["fail"]["C"] == "0");
  CHECK(cells["fail"]["NC"] == "0");
  CHECK(r.json["checks"][1]["verdict"] == "Nash");
  CHECK(r.json["outcome"]["success"] == true);
  CHECK_FALSE(r.trace.empty());
  CHECK(render(r, Format::Text).find("simple-table1") != std::string::npos);
}

TEST_CASE("overhead scenario report") {
  const auto r = run_scenario(load_scenario(bundled_scenario_dir() / "overhead-grid.json"));
  const auto& grid = r.json["outcome"]["grid"];
  REQUIRE(grid.size() >= 2);
  CHECK(grid[0]["current_bytes"] == 20672);
  CHECK(grid[0]["optimistic_bytes"] == 33216);
  CHECK(grid[0]["worst_bytes"] == 527360);
  CHECK(grid[1]["optimistic_bytes"] == 35008);
  CHECK(grid[1]["worst_bytes"] == 4218880);
  CHECK(grid[0]["comm_overhead_bytes"] == 192);
}

TEST_CASE("seed override is recorded") {
  RunOptions o;
  o.seed = 42;
  const auto r = run_scenario(parse_scenario(kMinimal), o);
  CHECK(r.json["seed"] == 42);
}

}  // TEST_SUITE
