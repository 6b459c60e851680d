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

#ifndef LMDLAB_SIM_ENGINE_HPP_
#define LMDLAB_SIM_ENGINE_HPP_

#include <string>
#include <utility>
#include <vector>

#include "lmdlab/sim/world.hpp"

namespace lmdlab::sim {

struct RunConfig {
  Tick start_tick = 0;
  Tick end_tick = 0;          // inclusive
  Tick realization_tick = 0;  // payoffs settle on view(realization_tick + 1)
  std::int64_t boost = 0;
  TieBreakPolicy tie_break = TieBreakPolicy::AdversaryFavoring;
};

// Behaviour of every participant, consulted once per tick.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual void on_tick(Tick tick, World& world) = 0;
};

struct RunTrace {
  World world;
  RunConfig config;
  std::vector<std::pair<Tick, BlockId>> tips;
  std::vector<BlockId> reorged;  // ever canonical, later dropped
  std::vector<BlockId> final_chain;

  BlockTree settlement_view() const;
  ForkChoiceParams settlement_params(const BlockTree& view) const;

  // Line-delimited JSON: one record per event, then a summary record.
  std::vector<std::string> jsonl() const;
};

RunTrace run(const RunConfig& config, World world, Policy& policy);

}  // namespace lmdlab::sim

#endif  // LMDLAB_SIM_ENGINE_HPP_
