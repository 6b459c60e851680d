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

#ifndef LMDLAB_EQ_SEARCH_HPP_
#define LMDLAB_EQ_SEARCH_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lmdlab/eq/game.hpp"

namespace lmdlab::eq {

class ExplosionGuard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Execution { Serial, Parallel };

// Plays every profile. The parallel path splits the batch across OpenMP
// threads; results land at their input index, so both paths agree exactly.
std::vector<std::vector<Payoff>> evaluate_profiles(const Game& game,
                                                   const std::vector<Profile>& profiles,
                                                   Execution exec = Execution::Parallel);

struct BestResponse {
  std::vector<std::size_t> candidates;
  std::vector<Payoff> payoffs;  // aligned with candidates
  std::vector<std::size_t> argmax;
};

// Empty `candidates` means the player's whole menu.
BestResponse best_response(const Game& game, const Profile& profile,
                           std::size_t player,
                           std::vector<std::size_t> candidates = {},
                           Execution exec = Execution::Parallel);

enum class Verdict { Nash, StrongNash, SPNE, NotEquilibrium };
const char* to_string(Verdict v);

struct Deviation {
  std::vector<std::size_t> players;
  std::vector<std::size_t> actions;
  std::vector<Payoff> gains;  // per coalition member
  std::string subgame;
};

struct SubgameTable {
  std::size_t player = 0;
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<std::vector<Payoff>> cells;
};

struct EquilibriumReport {
  Verdict verdict = Verdict::Nash;
  std::vector<Deviation> deviations;
  std::vector<SubgameTable> tables;
  std::uint64_t evaluations = 0;
};

struct SearchOptions {
  // Coalitions of up to this many players are checked for a joint
  // deviation that strictly helps every member. 1 means unilateral only.
  std::size_t max_coalition = 1;
  // Players eligible for coalitions; empty means everyone.
  std::vector<std::size_t> coalition_players;
  // Per-player candidate subsets; empty means full menus.
  std::vector<std::vector<std::size_t>> candidates;
  std::uint64_t max_joint_actions = 1'000'000;
  Execution exec = Execution::Parallel;
};

EquilibriumReport verify_nash(const Game& game, const Profile& profile,
                              const SearchOptions& opts = {});

// Backward induction over the decision points in reverse tick order. Each
// on-path decision must be a best response with every other decision point
// following the profile's rules. Emits C/NC tables for players that declare
// them, with rows conditioned on the rest of their group.
EquilibriumReport verify_spne(const Game& game, const Profile& profile,
                              const SearchOptions& opts = {});

enum class Dominance { StrictlyDominant, WeaklyDominant, Neither };
const char* to_string(Dominance d);

// Compares `action` with each alternative under every conditioning profile
// (the player's own entry is overwritten).
Dominance dominance_check(const Game& game, std::size_t player, std::size_t action,
                          const std::vector<std::size_t>& alternatives,
                          const std::vector<Profile>& conditioning,
                          Execution exec = Execution::Parallel);

// Every joint choice of the other players over their candidate sets.
std::vector<Profile> enumerate_opponents(const Game& game, const Profile& base,
                                         std::size_t player,
                                         const std::vector<std::vector<std::size_t>>& candidates,
                                         std::uint64_t max_joint_actions);

}  // namespace lmdlab::eq

#endif  // LMDLAB_EQ_SEARCH_HPP_
