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

#ifndef LMDLAB_GAMES_DAG_HPP_
#define LMDLAB_GAMES_DAG_HPP_

#include <optional>

#include "lmdlab/eq/search.hpp"
#include "lmdlab/games/game.hpp"

namespace lmdlab::games {

// Security scenario for the evidence-based vote rule. Genesis sits at slot
// 0, players act in slots 1..5, the adversary leads slot 3 and an honest
// leader closes the run at slot 6. Attestors of slot s+1 sign evidence at
// 3s+2 for every slot s vote they saw.
class DagGame : public LmdGame {
 public:
  static constexpr Slot kAdversarialSlot = 3;
  static constexpr Slot kLastPlayerSlot = 5;

  explicit DagGame(GameConfig config);
  GameOutcome simulate(const eq::Profile& profile) const override;

  // Non-honest, non-adversarial attestor seats of slot `s`.
  std::size_t rational_attestors(Slot s) const;
};

struct DagScenarioResult {
  eq::EquilibriumReport report;
  // Joint deviations of the slot t committee (t = kAdversarialSlot - 1).
  eq::EquilibriumReport coalition;
  GameOutcome outcome;
  bool safety = false;    // no non-adversarial block was ever reorged
  bool liveness = false;  // every compliant leader's block is final
  std::size_t adversary_votes = 0;
};

// Checks the prescribed profile with backward induction plus a coalition
// search over the slot t committee. Throws AssumptionViolated when a slot
// lacks a rational attestor majority.
DagScenarioResult dag_security_scenario(const GameConfig& config,
                                        const eq::SearchOptions& opts = {});

}  // namespace lmdlab::games

#endif  // LMDLAB_GAMES_DAG_HPP_
