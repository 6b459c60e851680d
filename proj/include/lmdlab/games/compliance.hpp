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

#ifndef LMDLAB_GAMES_COMPLIANCE_HPP_
#define LMDLAB_GAMES_COMPLIANCE_HPP_

#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "lmdlab/chain/fork_choice.hpp"
#include "lmdlab/sim/world.hpp"

namespace lmdlab::games {

class EmptyCandidateSet : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Compliance verdicts of the extended game. Blocks without a mark count as
// non-compliant, except the tree root B_{-p}.
struct ComplianceMarks {
  std::map<BlockId, bool> blocks;
  std::set<std::tuple<Slot, std::uint32_t, std::uint64_t>> compliant_votes;
  std::map<Slot, BlockId> propose_tip;  // tip seen by the slot i leader at 3i
  std::map<Slot, BlockId> vote_tip;     // tip seen by slot i attestors at 3i+1

  bool block_compliant(const BlockTree& tree, BlockId id) const;
  bool vote_compliant(const VoteRecord& v) const;
};

struct CompliantTipParams {
  Slot slot_i = 1;
  std::int64_t p = 1;
  std::int64_t W = 1;
  std::int64_t W_p = 0;
  TieBreakPolicy tie_break = TieBreakPolicy::AdversaryFavoring;
};

struct CompliantTipScan {
  BlockId tip;
  // Largest non-compliant slot on each surviving candidate's prefix;
  // nullopt stands for minus infinity.
  std::map<BlockId, std::optional<Slot>> index;
};

// For every block B, credits (p - slot_i + 1) W + W_p hypothetical votes to
// B, runs LMD GHOST without proposer boost and keeps B if it stays on the
// head chain. Returns the kept block whose prefix has the oldest last
// non-compliant block, preferring deeper blocks and then lower ids on ties.
CompliantTipScan compliant_tip_scan(const BlockTree& tree, const CompliantTipParams& params,
                                    const ComplianceMarks& marks);
BlockId compliant_tip(const BlockTree& tree, const CompliantTipParams& params,
                      const ComplianceMarks& marks);

// Iterative classification over slots 1..up_to, replaying the world's
// release schedule: the slot i leader's tip comes from view(3i), attestors'
// from view(3i+1).
ComplianceMarks classify_compliance(const sim::World& world, const CompliantTipParams& base,
                                    Slot up_to);

// One step of the classification; `marks` must already hold slots < i.
void classify_block(const BlockTree& tree, const Block& b, ComplianceMarks& marks);
void classify_votes(const BlockTree& tree, Slot slot_i, ComplianceMarks& marks);

}  // namespace lmdlab::games

#endif  // LMDLAB_GAMES_COMPLIANCE_HPP_
