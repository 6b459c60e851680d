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

#ifndef LMDLAB_SIM_CLOCK_HPP_
#define LMDLAB_SIM_CLOCK_HPP_

#include "lmdlab/chain/types.hpp"

namespace lmdlab::sim {

// Lock-step clock: three ticks per slot (propose, vote, aggregate). A message
// broadcast at tick t is seen by everyone from tick t + 1.
enum class Phase { Propose = 0, Vote = 1, Aggregate = 2 };

constexpr Slot slot_of(Tick t) { return t >= 0 ? t / 3 : -((-t + 2) / 3); }
constexpr Phase phase_of(Tick t) {
  return static_cast<Phase>(t - 3 * slot_of(t));
}
constexpr Tick propose_tick(Slot s) { return 3 * s; }
constexpr Tick vote_tick(Slot s) { return 3 * s + 1; }
constexpr Tick aggregate_tick(Slot s) { return 3 * s + 2; }

}  // namespace lmdlab::sim

#endif  // LMDLAB_SIM_CLOCK_HPP_
