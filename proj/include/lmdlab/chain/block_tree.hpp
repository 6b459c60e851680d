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

#ifndef LMDLAB_CHAIN_BLOCK_TREE_HPP_
#define LMDLAB_CHAIN_BLOCK_TREE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "lmdlab/chain/types.hpp"

namespace lmdlab {

// Rooted tree of blocks plus the head votes observed so far.
//
// Block ids are strictly increasing in insertion order, so a parent always
// sits at a smaller position than its children. Several algorithms rely on
// this to sweep the tree bottom-up with a reverse loop.
class BlockTree {
 public:
  explicit BlockTree(Block genesis);

  // Genesis at `slot` with id 0 and an honest proposer.
  static BlockTree with_genesis(Slot slot);

  void insert(Block block);
  void add_vote(const VoteRecord& vote);

  bool contains(BlockId id) const;
  const Block& block(BlockId id) const;
  const Block& genesis() const { return blocks_.front(); }
  BlockId next_id() const { return BlockId{blocks_.back().id.value + 1}; }

  std::span<const Block> blocks() const { return blocks_; }
  std::span<const VoteRecord> votes() const { return votes_; }
  std::span<const std::size_t> children_of(BlockId id) const;

  // Position of `id` in blocks(); throws UnknownBlock.
  std::size_t position(BlockId id) const;

  // True when `ancestor` is `descendant` or lies on its path to genesis.
  bool is_ancestor(BlockId ancestor, BlockId descendant) const;

  // Genesis-to-`tip` path.
  std::vector<BlockId> path_to(BlockId tip) const;

 private:
  std::vector<Block> blocks_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::ptrdiff_t> index_;  // id.value -> position, -1 if absent
  std::vector<VoteRecord> votes_;
};

}  // namespace lmdlab

#endif  // LMDLAB_CHAIN_BLOCK_TREE_HPP_
