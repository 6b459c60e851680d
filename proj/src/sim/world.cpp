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

#include "lmdlab/sim/world.hpp"

#include <algorithm>

#include "lmdlab/sim/clock.hpp"

namespace lmdlab::sim {

World::World(Slot genesis_slot, std::vector<Validator> roster)
    : roster_(std::move(roster)), full_(BlockTree::with_genesis(genesis_slot)) {
  block_release_.push_back(-1'000'000'000);
}

const Validator& World::validator(ValidatorId id) const {
  if (id.index >= roster_.size()) {
    throw SimError("unknown validator " + std::to_string(id.index));
  }
  return roster_[id.index];
}

BlockId World::propose(ProposeArgs a) {
  const Validator& v = validator(a.proposer);
  if (a.slot > slot_of(a.created)) {
    throw SimError("block for future slot " + std::to_string(a.slot));
  }
  if (a.release < a.created) throw SimError("release before creation");
  if (!full_.contains(a.parent)) {
    throw ChainError(ChainErrc::UnknownParent,
                     "parent " + std::to_string(a.parent.value));
  }
  if (a.release < block_release_[full_.position(a.parent)]) {
    throw SimError("block released before its parent");
  }
  if (v.kind == ValidatorKind::Adversarial) {
    for (const Block& b : full_.blocks()) {
      if (b.slot == a.slot && b.proposer == a.proposer && b.id.value != 0) {
        ++adversarial_equivocations_;
      }
    }
  }
  Block b;
  b.id = full_.next_id();
  b.slot = a.slot;
  b.parent = a.parent;
  b.proposer = a.proposer;
  b.proposer_kind = v.kind;
  b.is_empty = a.is_empty;
  b.included_votes = std::move(a.votes);
  b.included_evidences = std::move(a.evidences);
  const BlockId id = b.id;

  nlohmann::ordered_json p;
  p["block"] = id.value;
  p["slot"] = a.slot;
  p["parent"] = a.parent.value;
  p["proposer"] = a.proposer.index;
  p["empty"] = a.is_empty;
  p["votes"] = b.included_votes.size();
  p["evidences"] = b.included_evidences.size();
  p["release"] = a.release == kNeverReleased ? -1 : a.release;

  full_.insert(std::move(b));
  block_release_.push_back(a.release);
  events_.push_back({a.created, "block", std::move(p)});
  return id;
}

void World::vote(VoteRecord v, Tick created, Tick release) {
  const Validator& who = validator(v.voter);
  for (const TimedVote& tv : votes_) {
    if (tv.vote.voter == v.voter && tv.vote.slot == v.slot &&
        tv.vote.target != v.target) {
      if (who.kind != ValidatorKind::Adversarial) {
        throw SimError("slashable double vote by validator " +
                       std::to_string(v.voter.index));
      }
      ++adversarial_equivocations_;
    }
  }
  v.broadcast_tick = release;
  full_.add_vote(v);
  votes_.push_back({v, release});
  nlohmann::ordered_json p;
  p["voter"] = v.voter.index;
  p["slot"] = v.slot;
  p["target"] = v.target.value;
  p["release"] = release == kNeverReleased ? -1 : release;
  events_.push_back({created, "vote", std::move(p)});
}

void World::evidence(EvidenceRecord e, Tick release) {
  nlohmann::ordered_json p;
  p["signer"] = e.signer.index;
  p["voter"] = e.vote.voter.index;
  p["slot"] = e.vote.slot;
  p["target"] = e.vote.target.value;
  events_.push_back({e.created_tick, "evidence", std::move(p)});
  evidences_.push_back({std::move(e), release});
}

Tick World::block_release(BlockId id) const {
  return block_release_[full_.position(id)];
}

BlockTree World::view(Tick at) const {
  BlockTree t(full_.genesis());
  const auto blocks = full_.blocks();
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (block_release_[i] < at) t.insert(blocks[i]);
  }
  auto add = [&](const VoteRecord& v) {
    if (!t.contains(v.target)) return;
    for (const VoteRecord& w : t.votes()) {
      if (w.same_vote(v)) return;
    }
    t.add_vote(v);
  };
  for (const TimedVote& tv : votes_) {
    if (tv.release < at) add(tv.vote);
  }
  for (const Block& b : t.blocks()) {
    for (const VoteRecord& v : b.included_votes) add(v);
  }
  return t;
}

std::vector<VoteRecord> World::visible_votes(Tick at) const {
  std::vector<VoteRecord> out;
  for (const TimedVote& tv : votes_) {
    if (tv.release < at) out.push_back(tv.vote);
  }
  return out;
}

std::vector<EvidenceRecord> World::visible_evidences(Tick at) const {
  std::vector<EvidenceRecord> out;
  for (const TimedEvidence& te : evidences_) {
    if (te.release < at) out.push_back(te.evidence);
  }
  return out;
}

std::vector<VoteRecord> World::votes_of_slot(Slot s) const {
  std::vector<VoteRecord> out;
  for (const TimedVote& tv : votes_) {
    if (tv.vote.slot == s) out.push_back(tv.vote);
  }
  return out;
}

ForkChoiceParams view_params(const BlockTree& view, Tick at, std::int64_t boost,
                             TieBreakPolicy tie_break) {
  ForkChoiceParams p;
  p.current_slot = slot_of(at);
  p.boost = boost;
  p.tie_break = tie_break;
  for (const Block& b : view.blocks()) {
    if (b.slot == p.current_slot && b.id.value != 0) {
      p.boosted = b.id;
      break;
    }
  }
  return p;
}

}  // namespace lmdlab::sim
