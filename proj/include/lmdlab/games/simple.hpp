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

#ifndef LMDLAB_GAMES_SIMPLE_HPP_
#define LMDLAB_GAMES_SIMPLE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lmdlab/eq/search.hpp"
#include "lmdlab/games/game.hpp"

namespace lmdlab::games {

// One-slot reorg attempt. Slots are normalized so that t = 1: genesis sits
// at slot -1, B_{t-1} at 0, B_t at 1 and the adversary leads slot 2. The
// slot t attestors are the players; the rule asks them to vote B_{t-1}.
// The PoolSimple kind adds a pool holding the last m seats of slots t-1, t.
class SimpleGame : public LmdGame {
 public:
  static constexpr Slot kT = 1;

  explicit SimpleGame(GameConfig config);
  GameOutcome simulate(const eq::Profile& profile) const override;

  std::optional<std::size_t> pool_owner() const { return pool_owner_; }

 private:
  std::optional<std::size_t> pool_owner_;
};

// The simple game plus a supporting adversarial slot t'+1 in a later epoch
// whose adversary only includes slot t' votes of validators that complied
// at slot t. A slot t attestor sits in the t' committee with probability
// 1/epoch_length, and play() returns that expectation exactly.
class StrongSimpleGame : public SimpleGame {
 public:
  static constexpr Slot kTPrime = 10;

  explicit StrongSimpleGame(GameConfig config);
  std::vector<eq::Payoff> play(const eq::Profile& profile) const override;
  GameOutcome simulate(const eq::Profile& profile) const override;

  // Ledger of the supporting run in which every slot t attestor is a slot t'
  // attestor.
  reward::PayoffLedger supporting_ledger(const eq::Profile& profile) const;
};

// Without proposer boost: the adversary withholds B^A_{t-1} until 3t and
// wins iff more than half of the slot t attestors vote for it.
class NoBoostGame : public LmdGame {
 public:
  explicit NoBoostGame(GameConfig config);
  GameOutcome simulate(const eq::Profile& profile) const override;
};

enum class Condition : std::uint8_t { Succeed, Fail };
enum class PoolAction : std::uint8_t { C, NC };

// Payoffs observed by one player, split by attack outcome and by whether the
// player complied. A cell lists every distinct payoff observed over the
// enumerated opponent profiles that produce that outcome.
struct MatrixCell {
  std::vector<eq::Payoff> observed;
  bool empty() const { return observed.empty(); }
  bool consistent() const { return observed.size() == 1; }
  eq::Payoff value() const;
};

struct PayoffMatrix {
  std::size_t player = 0;
  // cells[condition][0 = C, 1 = NC]
  std::array<std::array<MatrixCell, 2>, 2> cells;
  std::uint64_t evaluations = 0;

  const MatrixCell& at(Condition c, PoolAction a) const {
    return cells[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)];
  }
};

// Every other player ranges over {comply, vote-tip}; the player's own C and NC
// are played against each. Honest seats stay honest.
PayoffMatrix simple_payoff_matrix(const GameConfig& config, std::size_t player = 0,
                                  std::uint64_t max_joint_actions = 1'000'000);
PayoffMatrix strong_simple_expected_matrix(const GameConfig& config,
                                           std::size_t player = 0,
                                           std::uint64_t max_joint_actions = 1'000'000);
// Shared by both: builds the matrix from any simple-family game.
PayoffMatrix tabulate_simple_matrix(const SimpleGame& game, std::size_t player,
                                    std::uint64_t max_joint_actions);

struct MonteCarloResult {
  std::uint64_t samples = 0;
  std::uint64_t memberships = 0;  // draws with the player in the t' committee
  double membership_rate = 0;
  double sigma = 0;  // standard error of the rate under 1/epoch_length
  eq::Payoff support;  // supporting-slot payoff given membership
  // Empirical expected payoffs for the C column.
  double succeed_c = 0;
  double fail_c = 0;
};

// Samples committee assignments for epochs e and e+2 and counts how often
// the player's validator lands in the t' committee.
MonteCarloResult strong_simple_monte_carlo(const GameConfig& config,
                                           std::uint64_t samples,
                                           eq::Execution exec = eq::Execution::Parallel,
                                           std::size_t player = 0);

// (slot t-1 part, slot t part) of the pool's payoff. Under Fail every solo
// slot t attestor votes B_t.
std::pair<eq::Payoff, eq::Payoff> pool_payoff_simple(const GameConfig& config,
                                                     PoolAction action,
                                                     Condition others);

}  // namespace lmdlab::games

#endif  // LMDLAB_GAMES_SIMPLE_HPP_
