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

#ifndef LMDLAB_CLI_RUNNER_HPP_
#define LMDLAB_CLI_RUNNER_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lmdlab/eq/search.hpp"
#include "lmdlab/games/config.hpp"
#include "lmdlab/overhead/overhead.hpp"
#include "lmdlab/reward/reward.hpp"

namespace lmdlab::cli {

// Not valid JSON, or the file cannot be read. Exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed JSON that breaks the scenario schema. Exit code 3.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Json };
Format format_from_string(std::string_view s);

enum class Analysis {
  Game,
  TendermintWithholding,
  TendermintAnchor,
  Quantify,
  Overhead,
};

enum class CheckType { Nash, Spne, Dominance, Matrix, Security };

struct CheckRequest {
  CheckType type = CheckType::Nash;
  std::size_t max_coalition = 1;
  std::vector<std::string> coalition;   // player names; empty means everyone
  std::vector<std::string> candidates;  // action names kept from each menu
  std::string player;                   // dominance and matrix
  std::string action;                   // dominance
  std::vector<std::string> alternatives;
  std::uint64_t samples = 0;            // Monte Carlo draws for the strong game
};

struct TendermintSpec {
  std::int64_t f = 1;
  std::int64_t m = 0;
  std::optional<std::int64_t> honest;
  reward::Amount r_unit{1};
};

struct QuantifySpec {
  std::int64_t n_validators = 1'073'375;
  std::int64_t stake_gwei = 32'000'000'000;
  reward::Amount mev_fail_eth{0};
  reward::Amount mev_success_eth{0};
  reward::Amount pool_share{0};
};

struct OverheadSpec {
  overhead::OverheadParams base;
  // (n_agg, n_limit) pairs; empty means just `base`.
  std::vector<std::pair<std::int64_t, std::int64_t>> grid;
};

struct Scenario {
  std::string id;
  std::string description;
  Analysis analysis = Analysis::Game;
  games::GameConfig game;
  TendermintSpec tendermint;
  QuantifySpec quantify;
  OverheadSpec overhead;
  std::optional<std::string> strategy;
  std::map<std::string, std::string> overrides;  // player name -> action
  std::vector<CheckRequest> checks;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output_path;
  std::optional<Format> format;
};

// Throws ParseError or ValidationError. Unknown keys are rejected.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::uint64_t max_joint_actions = 1'000'000;
  eq::Execution exec = eq::Execution::Parallel;
  std::optional<std::string> trace_path;  // recorded in the report
};

struct Report {
  nlohmann::ordered_json json;
  // Line-delimited trace records, when the analysis produces a run.
  std::vector<std::string> trace;
};

// Throws ValidationError for bad references (strategies, players, actions)
// and eq::ExplosionGuard when a search would be too large.
Report run_scenario(const Scenario& scenario, const RunOptions& options = {});

std::string render(const Report& report, Format format);

struct ScenarioInfo {
  std::string id;
  std::string description;
  std::filesystem::path path;
};

// Scenarios found in `dirs`, sorted by id. A later directory's file wins
// over an earlier one with the same id.
std::vector<ScenarioInfo> list_scenarios(const std::vector<std::filesystem::path>& dirs);

std::filesystem::path bundled_scenario_dir();

// 2, 3 or 4 for the matching failure, 1 for anything else.
int exit_code_of(const std::exception& e);

}  // namespace lmdlab::cli

#endif  // LMDLAB_CLI_RUNNER_HPP_
