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

#include "lmdlab/chain/block_tree.hpp"

#include <algorithm>
#include <string>

namespace lmdlab {

const char* to_string(ChainErrc code) {
  switch (code) {
    case ChainErrc::UnknownParent: return "UnknownParent";
    case ChainErrc::UnknownBlock: return "UnknownBlock";
    case ChainErrc::DuplicateId: return "DuplicateId";
    case ChainErrc::IdOutOfOrder: return "IdOutOfOrder";
    case ChainErrc::SlotNotAfterParent: return "SlotNotAfterParent";
    case ChainErrc::EquivocationRejected: return "EquivocationRejected";
    case ChainErrc::InvalidVote: return "InvalidVote";
    case ChainErrc::TargetNotOnChainQueryable:
      return "TargetNotOnChainQueryable";
  }
  return "ChainError";
}

BlockTree::BlockTree(Block genesis) {
  index_.assign(genesis.id.value + 1, -1);
  index_[genesis.id.value] = 0;
  blocks_.push_back(std::move(genesis));
  children_.emplace_back();
}

BlockTree BlockTree::with_genesis(Slot slot) {
  Block g;
  g.id = BlockId{0};
  g.slot = slot;
  g.parent = BlockId{0};
  g.proposer_kind = ValidatorKind::Honest;
  g.is_empty = true;
  return BlockTree(std::move(g));
}

void BlockTree::insert(Block block) {
  const auto id = block.id.value;
  if (contains(block.id)) {
    throw ChainError(ChainErrc::DuplicateId, "block " + std::to_string(id));
  }
  if (block.id <= blocks_.back().id) {
    throw ChainError(ChainErrc::IdOutOfOrder, "block " + std::to_string(id));
  }
  if (!contains(block.parent)) {
    throw ChainError(ChainErrc::UnknownParent,
                     "parent " + std::to_string(block.parent.value));
  }
  const Block& parent = this->block(block.parent);
  if (block.slot <= parent.slot) {
    throw ChainError(ChainErrc::SlotNotAfterParent,
                     "block " + std::to_string(id));
  }
  if (block.proposer_kind != ValidatorKind::Adversarial) {
    for (const Block& b : blocks_) {
      if (b.slot == block.slot && b.proposer == block.proposer &&
          &b != &blocks_.front()) {
        throw ChainError(ChainErrc::EquivocationRejected,
                         "slot " + std::to_string(block.slot));
      }
    }
  }
  const std::size_t pos = blocks_.size();
  children_[position(block.parent)].push_back(pos);
  if (index_.size() <= id) index_.resize(id + 1, -1);
  index_[id] = static_cast<std::ptrdiff_t>(pos);
  blocks_.push_back(std::move(block));
  children_.emplace_back();
}

void BlockTree::add_vote(const VoteRecord& vote) {
  if (!contains(vote.target)) {
    throw ChainError(ChainErrc::UnknownBlock,
                     "vote target " + std::to_string(vote.target.value));
  }
  if (block(vote.target).slot > vote.slot) {
    throw ChainError(ChainErrc::InvalidVote, "target newer than vote slot");
  }
  votes_.push_back(vote);
}

bool BlockTree::contains(BlockId id) const {
  return id.value < index_.size() && index_[id.value] >= 0;
}

std::size_t BlockTree::position(BlockId id) const {
  if (!contains(id)) {
    throw ChainError(ChainErrc::UnknownBlock,
                     "block " + std::to_string(id.value));
  }
  return static_cast<std::size_t>(index_[id.value]);
}

const Block& BlockTree::block(BlockId id) const { return blocks_[position(id)]; }

std::span<const std::size_t> BlockTree::children_of(BlockId id) const {
  return children_[position(id)];
}

bool BlockTree::is_ancestor(BlockId ancestor, BlockId descendant) const {
  std::size_t pos = position(descendant);
  const std::size_t target = position(ancestor);
  while (true) {
    if (pos == target) return true;
    if (pos == 0 || pos < target) return false;
    pos = position(blocks_[pos].parent);
  }
}

std::vector<BlockId> BlockTree::path_to(BlockId tip) const {
  std::vector<BlockId> path;
  std::size_t pos = position(tip);
  while (true) {
    path.push_back(blocks_[pos].id);
    if (pos == 0) break;
    pos = position(blocks_[pos].parent);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace lmdlab
