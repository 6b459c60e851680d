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

#include "lmdlab/chain/fork_choice.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_set>

namespace lmdlab {

std::vector<VoteRecord> latest_votes(const BlockTree& tree) {
  std::map<ValidatorId, VoteRecord> latest;
  for (const VoteRecord& v : tree.votes()) {
    auto [it, inserted] = latest.try_emplace(v.voter, v);
    if (inserted) continue;
    VoteRecord& cur = it->second;
    if (v.slot > cur.slot || (v.slot == cur.slot && v.target < cur.target)) {
      cur = v;
    }
  }
  std::vector<VoteRecord> out;
  out.reserve(latest.size());
  for (auto& [voter, vote] : latest) out.push_back(vote);
  return out;
}

std::vector<std::int64_t> subtree_weights(const BlockTree& tree,
                                          const ForkChoiceParams& params) {
  const auto blocks = tree.blocks();
  std::vector<std::int64_t> w(blocks.size(), 0);
  for (const VoteRecord& v : latest_votes(tree)) {
    w[tree.position(v.target)] += 1;
  }
  if (params.boosted && tree.contains(*params.boosted) &&
      tree.block(*params.boosted).slot == params.current_slot) {
    w[tree.position(*params.boosted)] += params.boost;
  }
  for (const auto& [id, extra] : params.extra_weight) {
    w[tree.position(id)] += extra;
  }
  for (std::size_t i = blocks.size(); i-- > 1;) {
    w[tree.position(blocks[i].parent)] += w[i];
  }
  return w;
}

std::int64_t subtree_weight(const BlockTree& tree, BlockId root,
                            Slot current_slot, std::optional<BlockId> boosted,
                            std::int64_t boost) {
  ForkChoiceParams p;
  p.current_slot = current_slot;
  p.boosted = boosted;
  p.boost = boost;
  return subtree_weights(tree, p)[tree.position(root)];
}

namespace {

constexpr Slot kNoAdversarialBlock = std::numeric_limits<Slot>::min();

std::vector<Slot> newest_adversarial_slot(const BlockTree& tree) {
  const auto blocks = tree.blocks();
  std::vector<Slot> s(blocks.size(), kNoAdversarialBlock);
  for (std::size_t i = blocks.size(); i-- > 0;) {
    if (blocks[i].proposer_kind == ValidatorKind::Adversarial && i != 0) {
      s[i] = std::max(s[i], blocks[i].slot);
    }
    if (i > 0) {
      auto& p = s[tree.position(blocks[i].parent)];
      p = std::max(p, s[i]);
    }
  }
  return s;
}

}  // namespace

BlockId fork_choice(const BlockTree& tree, const ForkChoiceParams& params) {
  const auto blocks = tree.blocks();
  const auto w = subtree_weights(tree, params);
  std::vector<Slot> adv;
  if (params.tie_break == TieBreakPolicy::AdversaryFavoring) {
    adv = newest_adversarial_slot(tree);
  }
  std::size_t pos = 0;
  while (true) {
    const auto kids = tree.children_of(blocks[pos].id);
    if (kids.empty()) return blocks[pos].id;
    std::size_t best = kids.front();
    for (std::size_t k : kids.subspan(1)) {
      if (w[k] > w[best]) {
        best = k;
      } else if (w[k] == w[best]) {
        // Children are stored in increasing id order, so keeping `best`
        // on equal keys already prefers the lowest id.
        if (!adv.empty() && adv[k] > adv[best]) best = k;
      }
    }
    pos = best;
  }
}

std::vector<BlockId> canonical_chain(const BlockTree& tree,
                                     const ForkChoiceParams& params) {
  return tree.path_to(fork_choice(tree, params));
}

std::vector<BlockId> detect_reorg(const std::vector<BlockId>& before,
                                  const std::vector<BlockId>& after) {
  std::unordered_set<std::uint64_t> keep;
  for (BlockId b : after) keep.insert(b.value);
  std::vector<BlockId> out;
  for (BlockId b : before) {
    if (!keep.count(b.value)) out.push_back(b);
  }
  return out;
}

std::optional<BlockId> last_block_at_or_before(const BlockTree& tree,
                                               const std::vector<BlockId>& chain,
                                               Slot slot) {
  std::optional<BlockId> out;
  for (BlockId b : chain) {
    if (tree.block(b).slot <= slot) out = b;
  }
  return out;
}

}  // namespace lmdlab
