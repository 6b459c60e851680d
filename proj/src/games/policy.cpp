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

#include "lmdlab/games/policy.hpp"

#include <set>
#include <tuple>

namespace lmdlab::games {
namespace {

using VoteKey = std::tuple<Slot, std::uint32_t, std::uint64_t>;

VoteKey key_of(const VoteRecord& v) { return {v.slot, v.voter.index, v.target.value}; }

}  // namespace

BlockId LmdPolicy::tip(const sim::World& w, Tick at) const {
  const BlockTree v = w.view(at);
  return fork_choice(v, sim::view_params(v, at, boost(), tie_break()));
}

std::optional<BlockId> LmdPolicy::block_of_slot(const sim::World& w, Slot s,
                                                Tick at) const {
  const BlockTree v = w.view(at);
  for (const Block& b : v.blocks()) {
    if (b.slot == s && b.id != v.genesis().id) return b.id;
  }
  return std::nullopt;
}

std::vector<VoteRecord> LmdPolicy::pending_votes(const sim::World& w, BlockId parent,
                                                 Slot below, Tick at) const {
  const BlockTree v = w.view(at);
  std::set<VoteKey> carried;
  for (BlockId id : v.path_to(parent)) {
    for (const VoteRecord& r : v.block(id).included_votes) carried.insert(key_of(r));
  }
  std::vector<VoteRecord> out;
  for (const VoteRecord& r : v.votes()) {
    if (r.slot >= below || carried.count(key_of(r))) continue;
    carried.insert(key_of(r));
    out.push_back(r);
  }
  return out;
}

std::vector<EvidenceRecord> LmdPolicy::pending_evidences(const sim::World& w,
                                                         BlockId parent, Tick at) const {
  const BlockTree v = w.view(at);
  std::set<std::pair<std::uint32_t, VoteKey>> carried;
  for (BlockId id : v.path_to(parent)) {
    for (const EvidenceRecord& e : v.block(id).included_evidences) {
      carried.insert({e.signer.index, key_of(e.vote)});
    }
  }
  std::vector<EvidenceRecord> out;
  for (const EvidenceRecord& e : w.visible_evidences(at)) {
    if (!v.contains(e.vote.target)) continue;
    if (!carried.insert({e.signer.index, key_of(e.vote)}).second) continue;
    out.push_back(e);
  }
  return out;
}

BlockId LmdPolicy::honest_propose(sim::World& w, Slot s, Tick tick,
                                  std::optional<BlockId> parent) const {
  sim::ProposeArgs a;
  a.slot = s;
  a.parent = parent ? *parent : tip(w, tick);
  a.proposer = game_.schedule().duty(s).leader;
  a.votes = pending_votes(w, a.parent, s, tick);
  if (dag()) a.evidences = pending_evidences(w, a.parent, tick);
  a.created = tick;
  a.release = tick;
  return w.propose(std::move(a));
}

void LmdPolicy::cast(sim::World& w, ValidatorId v, Slot s, BlockId target, Tick tick,
                     Tick release) const {
  w.vote({s, v, target, release}, tick, release);
}

}  // namespace lmdlab::games
