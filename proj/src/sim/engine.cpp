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

#include "lmdlab/sim/engine.hpp"

#include <algorithm>

namespace lmdlab::sim {

BlockTree RunTrace::settlement_view() const {
  return world.view(config.realization_tick + 1);
}

ForkChoiceParams RunTrace::settlement_params(const BlockTree& view) const {
  // The settlement view includes messages released at the realization tick
  // itself, but the slot for the boost is still the realization tick's slot.
  ForkChoiceParams p = view_params(view, config.realization_tick, config.boost,
                                   config.tie_break);
  return p;
}

std::vector<std::string> RunTrace::jsonl() const {
  std::vector<std::string> out;
  for (const TraceEvent& e : world.events()) {
    nlohmann::ordered_json j;
    j["tick"] = e.tick;
    j["kind"] = e.kind;
    j["payload"] = e.payload;
    out.push_back(j.dump());
  }
  for (const auto& [tick, tip] : tips) {
    nlohmann::ordered_json j;
    j["tick"] = tick;
    j["kind"] = "tip";
    j["payload"] = {{"block", tip.value}};
    out.push_back(j.dump());
  }
  nlohmann::ordered_json s;
  s["tick"] = config.realization_tick;
  s["kind"] = "summary";
  std::vector<std::uint64_t> chain, reorg;
  for (BlockId b : final_chain) chain.push_back(b.value);
  for (BlockId b : reorged) reorg.push_back(b.value);
  s["payload"] = {{"final_chain", chain},
                  {"reorged", reorg},
                  {"adversarial_equivocations", world.adversarial_equivocations()}};
  out.push_back(s.dump());
  return out;
}

RunTrace run(const RunConfig& config, World world, Policy& policy) {
  if (config.end_tick < config.start_tick ||
      config.realization_tick < config.start_tick) {
    throw SimError("empty tick range");
  }
  RunTrace trace{std::move(world), config, {}, {}, {}};
  std::vector<BlockId> prev;
  auto note_chain = [&](const std::vector<BlockId>& chain) {
    for (BlockId b : detect_reorg(prev, chain)) {
      if (std::find(trace.reorged.begin(), trace.reorged.end(), b) ==
          trace.reorged.end()) {
        trace.reorged.push_back(b);
      }
    }
    prev = chain;
  };
  for (Tick t = config.start_tick; t <= config.end_tick; ++t) {
    policy.on_tick(t, trace.world);
    const BlockTree v = trace.world.view(t + 1);
    const auto chain =
        canonical_chain(v, view_params(v, t, config.boost, config.tie_break));
    trace.tips.emplace_back(t, chain.back());
    note_chain(chain);
  }
  const BlockTree v = trace.settlement_view();
  trace.final_chain = canonical_chain(v, trace.settlement_params(v));
  note_chain(trace.final_chain);
  return trace;
}

}  // namespace lmdlab::sim
