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

#ifndef LMDLAB_GAMES_POLICY_HPP_
#define LMDLAB_GAMES_POLICY_HPP_

#include <optional>
#include <vector>

#include "lmdlab/games/game.hpp"
#include "lmdlab/sim/engine.hpp"

namespace lmdlab::games {

// Shared protocol behaviour for the game policies: honest proposals and
// votes, DAG evidence, and block lookups by slot.
class LmdPolicy : public sim::Policy {
 public:
  LmdPolicy(const LmdGame& game, const eq::Profile& profile)
      : game_(game), profile_(profile) {}

 protected:
  std::int64_t boost() const { return game_.config().effective_boost(); }
  TieBreakPolicy tie_break() const { return game_.config().tie_break; }
  bool dag() const { return game_.config().mechanism == reward::Mechanism::DagVotes; }

  // LMD GHOST head of view(at), boosting the current slot's proposal.
  BlockId tip(const sim::World& w, Tick at) const;
  // Lowest-id block of slot `s` visible at `at`.
  std::optional<BlockId> block_of_slot(const sim::World& w, Slot s, Tick at) const;

  // Votes of slots below `below` visible at `at` and not yet carried by the
  // chain ending at `parent`.
  std::vector<VoteRecord> pending_votes(const sim::World& w, BlockId parent,
                                        Slot below, Tick at) const;
  std::vector<EvidenceRecord> pending_evidences(const sim::World& w, BlockId parent,
                                                Tick at) const;

  // Protocol proposal by the slot leader: on the tip unless `parent` is
  // given, carrying every pending vote (and evidence under DAG rules).
  BlockId honest_propose(sim::World& w, Slot s, Tick tick,
                         std::optional<BlockId> parent = std::nullopt) const;
  void cast(sim::World& w, ValidatorId v, Slot s, BlockId target, Tick tick,
            Tick release) const;
  // Slot s+1 attestors vouch for the slot s votes they saw by `tick`.
  // `signs` filters signers.
  template <typename Pred>
  void sign_evidence(sim::World& w, Slot s, Tick tick, Pred signs) const {
    if (!game_.schedule().covers(s + 1)) return;
    const auto seen = w.visible_votes(tick);
    for (ValidatorId signer : game_.schedule().duty(s + 1).attestors) {
      if (!signs(signer)) continue;
      for (const VoteRecord& v : seen) {
        if (v.slot == s) w.evidence({signer, v, tick}, tick);
      }
    }
  }

  const LmdGame& game_;
  const eq::Profile& profile_;
};

}  // namespace lmdlab::games

#endif  // LMDLAB_GAMES_POLICY_HPP_
