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

#ifndef LMDLAB_SIM_WORLD_HPP_
#define LMDLAB_SIM_WORLD_HPP_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lmdlab/chain/block_tree.hpp"
#include "lmdlab/chain/fork_choice.hpp"

namespace lmdlab::sim {

class SimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraceEvent {
  Tick tick = 0;
  std::string kind;
  nlohmann::ordered_json payload;
};

struct ProposeArgs {
  Slot slot = 0;
  BlockId parent;
  ValidatorId proposer;
  bool is_empty = false;
  std::vector<VoteRecord> votes;
  std::vector<EvidenceRecord> evidences;
  Tick created = 0;
  Tick release = 0;
};

// Every message ever produced, each with the tick it becomes public.
// view(t) is the shared lock-step view at tick t: everything released at or
// before t - 1, plus the votes carried inside visible blocks.
class World {
 public:
  World(Slot genesis_slot, std::vector<Validator> roster);

  const Validator& validator(ValidatorId id) const;
  std::span<const Validator> roster() const { return roster_; }

  BlockId propose(ProposeArgs args);
  void vote(VoteRecord v, Tick created, Tick release);
  void evidence(EvidenceRecord e, Tick release);

  BlockTree view(Tick at) const;
  const BlockTree& full() const { return full_; }
  Tick block_release(BlockId id) const;

  std::vector<VoteRecord> visible_votes(Tick at) const;
  std::vector<EvidenceRecord> visible_evidences(Tick at) const;
  std::vector<VoteRecord> votes_of_slot(Slot s) const;

  const std::vector<TraceEvent>& events() const { return events_; }
  void record(TraceEvent e) { events_.push_back(std::move(e)); }
  std::size_t adversarial_equivocations() const { return adversarial_equivocations_; }

 private:
  struct TimedVote {
    VoteRecord vote;
    Tick release;
  };
  struct TimedEvidence {
    EvidenceRecord evidence;
    Tick release;
  };

  std::vector<Validator> roster_;
  BlockTree full_;
  std::vector<Tick> block_release_;  // by position in full_
  std::vector<TimedVote> votes_;
  std::vector<TimedEvidence> evidences_;
  std::vector<TraceEvent> events_;
  std::size_t adversarial_equivocations_ = 0;
};

// Fork choice parameters for a view taken at tick `at`: the current slot is
// slot_of(at) and the boost goes to the lowest-id block of that slot.
ForkChoiceParams view_params(const BlockTree& view, Tick at, std::int64_t boost,
                             TieBreakPolicy tie_break);

}  // namespace lmdlab::sim

#endif  // LMDLAB_SIM_WORLD_HPP_
