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

#include "lmdlab/games/compliance.hpp"

#include <algorithm>

#include "lmdlab/sim/clock.hpp"

namespace lmdlab::games {
namespace {

std::tuple<Slot, std::uint32_t, std::uint64_t> key_of(const VoteRecord& v) {
  return {v.slot, v.voter.index, v.target.value};
}

}  // namespace

bool ComplianceMarks::block_compliant(const BlockTree& tree, BlockId id) const {
  if (id == tree.genesis().id) return true;
  auto it = blocks.find(id);
  return it != blocks.end() && it->second;
}

bool ComplianceMarks::vote_compliant(const VoteRecord& v) const {
  return compliant_votes.count(key_of(v)) > 0;
}

CompliantTipScan compliant_tip_scan(const BlockTree& tree, const CompliantTipParams& prm,
                                    const ComplianceMarks& marks) {
  CompliantTipScan scan;
  const std::int64_t hyp = (prm.p - prm.slot_i + 1) * prm.W + prm.W_p;
  for (const Block& b : tree.blocks()) {
    ForkChoiceParams fc;
    fc.current_slot = prm.slot_i;
    fc.tie_break = prm.tie_break;
    fc.extra_weight = {{b.id, hyp}};
    const auto chain = canonical_chain(tree, fc);
    if (std::find(chain.begin(), chain.end(), b.id) == chain.end()) continue;
    std::optional<Slot> worst;
    for (BlockId id : tree.path_to(b.id)) {
      if (!marks.block_compliant(tree, id)) worst = tree.block(id).slot;
    }
    scan.index[b.id] = worst;
  }
  if (scan.index.empty()) throw EmptyCandidateSet("no block survives the scan");
  // nullopt (minus infinity) sorts first in std::optional's ordering.
  auto better = [&](BlockId a, BlockId b) {
    const auto& ia = scan.index.at(a);
    const auto& ib = scan.index.at(b);
    if (ia != ib) return ia < ib;
    const Slot sa = tree.block(a).slot;
    const Slot sb = tree.block(b).slot;
    if (sa != sb) return sa > sb;
    return a < b;
  };
  BlockId best = scan.index.begin()->first;
  for (const auto& [id, idx] : scan.index) {
    if (better(id, best)) best = id;
  }
  scan.tip = best;
  return scan;
}

BlockId compliant_tip(const BlockTree& tree, const CompliantTipParams& params,
                      const ComplianceMarks& marks) {
  return compliant_tip_scan(tree, params, marks).tip;
}

void classify_block(const BlockTree& tree, const Block& b, ComplianceMarks& marks) {
  const Slot i = b.slot;
  auto tip = marks.propose_tip.find(i);
  bool ok = b.is_empty && tip != marks.propose_tip.end() && b.parent == tip->second;
  if (ok && i == 1) ok = b.parent == tree.genesis().id && b.included_votes.empty();
  if (ok && i > 1) {
    for (const VoteRecord& v : b.included_votes) {
      if (v.slot != i - 1 || v.target != b.parent || !marks.vote_compliant(v)) ok = false;
    }
  }
  marks.blocks[b.id] = ok;
}

void classify_votes(const BlockTree& tree, Slot slot_i, ComplianceMarks& marks) {
  auto tip = marks.vote_tip.find(slot_i);
  if (tip == marks.vote_tip.end()) return;
  for (const VoteRecord& v : tree.votes()) {
    if (v.slot == slot_i && v.target == tip->second) marks.compliant_votes.insert(key_of(v));
  }
}

ComplianceMarks classify_compliance(const sim::World& world, const CompliantTipParams& base,
                                    Slot up_to) {
  ComplianceMarks marks;
  for (Slot i = 1; i <= up_to; ++i) {
    CompliantTipParams prm = base;
    prm.slot_i = i;
    const BlockTree at_propose = world.view(sim::propose_tick(i));
    marks.propose_tip[i] = compliant_tip(at_propose, prm, marks);
    const BlockTree at_vote = world.view(sim::vote_tick(i));
    for (const Block& b : at_vote.blocks()) {
      if (b.slot == i && !marks.blocks.count(b.id) && b.id != at_vote.genesis().id) {
        classify_block(at_vote, b, marks);
      }
    }
    marks.vote_tip[i] = compliant_tip(at_vote, prm, marks);
    classify_votes(world.view(sim::aggregate_tick(i) + 1), i, marks);
  }
  return marks;
}

}  // namespace lmdlab::games
