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

#ifndef LMDLAB_CHAIN_FORK_CHOICE_HPP_
#define LMDLAB_CHAIN_FORK_CHOICE_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lmdlab/chain/block_tree.hpp"

namespace lmdlab {

enum class TieBreakPolicy : std::uint8_t {
  // Prefer the child whose subtree holds the most recent adversarial block,
  // falling back to the lowest id.
  AdversaryFavoring,
  // Lowest id wins.
  Lexicographic,
};

struct ForkChoiceParams {
  Slot current_slot = 0;
  std::optional<BlockId> boosted;
  std::int64_t boost = 0;
  TieBreakPolicy tie_break = TieBreakPolicy::AdversaryFavoring;
  // Hypothetical weight credited to a block (and so to all its ancestors).
  std::vector<std::pair<BlockId, std::int64_t>> extra_weight;
};

// Latest vote per voter: the one with the largest slot, ties broken towards
// the lowest target id.
std::vector<VoteRecord> latest_votes(const BlockTree& tree);

// Subtree weight of every block, indexed by position in tree.blocks().
std::vector<std::int64_t> subtree_weights(const BlockTree& tree,
                                          const ForkChoiceParams& params);

std::int64_t subtree_weight(const BlockTree& tree, BlockId root,
                            Slot current_slot, std::optional<BlockId> boosted,
                            std::int64_t boost);

// LMD GHOST head.
BlockId fork_choice(const BlockTree& tree, const ForkChoiceParams& params);

// Genesis-to-head path.
std::vector<BlockId> canonical_chain(const BlockTree& tree,
                                     const ForkChoiceParams& params);

// Blocks of `before` missing from `after`, in their original order.
std::vector<BlockId> detect_reorg(const std::vector<BlockId>& before,
                                  const std::vector<BlockId>& after);

// Last block of `chain` whose slot is at most `slot`.
std::optional<BlockId> last_block_at_or_before(const BlockTree& tree,
                                               const std::vector<BlockId>& chain,
                                               Slot slot);

}  // namespace lmdlab

#endif  // LMDLAB_CHAIN_FORK_CHOICE_HPP_
