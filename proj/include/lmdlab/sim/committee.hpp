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

#ifndef LMDLAB_SIM_COMMITTEE_HPP_
#define LMDLAB_SIM_COMMITTEE_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "lmdlab/chain/types.hpp"

namespace lmdlab::sim {

class ScheduleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SlotDuty {
  ValidatorId leader;
  std::vector<ValidatorId> attestors;  // leader not necessarily a member
};

struct CommitteeSchedule {
  Slot first_slot = 0;
  std::uint32_t epoch_length = 32;
  std::vector<SlotDuty> duties;         // duties[s - first_slot]
  std::vector<Validator> validators;    // indexed by ValidatorId::index

  const SlotDuty& duty(Slot s) const;
  bool covers(Slot s) const;
};

struct ScheduleOptions {
  std::uint64_t seed = 0;
  std::uint32_t n_validators = 0;
  std::uint32_t committee_size = 0;
  std::uint32_t epoch_length = 32;
  Slot first_slot = 0;
  std::set<Slot> adversarial_slots;
  // Every slot reuses the first committee; leaders still rotate.
  bool fixed_attestors = false;
};

// Seeded Fisher-Yates shuffle on mt19937_64, split into consecutive
// committees. Committees are pairwise disjoint unless fixed_attestors is set.
// The leader of each slot is a member of its committee.
// Leaders of adversarial slots are marked Adversarial; everyone else starts
// Rational.
CommitteeSchedule assign_committees(const ScheduleOptions& opts);

// Position of each validator in the shuffle, exposed for tests.
std::vector<std::uint32_t> seeded_permutation(std::uint64_t seed,
                                              std::uint32_t n);

}  // namespace lmdlab::sim

#endif  // LMDLAB_SIM_COMMITTEE_HPP_
