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

#include "lmdlab/sim/committee.hpp"

#include <numeric>
#include <random>
#include <string>

namespace lmdlab::sim {

const SlotDuty& CommitteeSchedule::duty(Slot s) const {
  if (!covers(s)) {
    throw ScheduleError("slot " + std::to_string(s) + " outside schedule");
  }
  return duties[static_cast<std::size_t>(s - first_slot)];
}

bool CommitteeSchedule::covers(Slot s) const {
  return s >= first_slot &&
         s < first_slot + static_cast<Slot>(duties.size());
}

std::vector<std::uint32_t> seeded_permutation(std::uint64_t seed,
                                              std::uint32_t n) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  // mt19937_64 output is fixed by the standard; the distribution classes are
  // not, so draw indices by hand to stay reproducible across toolchains.
  std::mt19937_64 rng(seed);
  for (std::uint32_t i = n; i > 1; --i) {
    const auto j = static_cast<std::uint32_t>(rng() % i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

CommitteeSchedule assign_committees(const ScheduleOptions& o) {
  if (o.committee_size == 0 || o.epoch_length == 0) {
    throw ScheduleError("committee size and epoch length must be positive");
  }
  const std::uint64_t needed =
      o.fixed_attestors ? o.committee_size
                        : std::uint64_t{o.committee_size} * o.epoch_length;
  if (o.n_validators < needed) {
    throw ScheduleError("need at least " + std::to_string(needed) +
                        " validators, got " + std::to_string(o.n_validators));
  }
  for (Slot s : o.adversarial_slots) {
    if (s < o.first_slot || s >= o.first_slot + Slot{o.epoch_length}) {
      throw ScheduleError("adversarial slot " + std::to_string(s) +
                          " outside the epoch");
    }
  }

  CommitteeSchedule out;
  out.first_slot = o.first_slot;
  out.epoch_length = o.epoch_length;
  out.validators.resize(o.n_validators);
  for (std::uint32_t i = 0; i < o.n_validators; ++i) {
    out.validators[i].id = ValidatorId{i};
  }

  const auto perm = seeded_permutation(o.seed, o.n_validators);
  for (std::uint32_t k = 0; k < o.epoch_length; ++k) {
    SlotDuty d;
    const std::uint64_t base = o.fixed_attestors ? 0 : std::uint64_t{k} * o.committee_size;
    for (std::uint32_t j = 0; j < o.committee_size; ++j) {
      d.attestors.push_back(ValidatorId{perm[base + j]});
    }
    // Leaders rotate through the committee when attestors are fixed.
    d.leader = d.attestors[o.fixed_attestors ? k % o.committee_size : 0];
    out.duties.push_back(std::move(d));
  }
  for (Slot s : o.adversarial_slots) {
    out.validators[out.duty(s).leader.index].kind = ValidatorKind::Adversarial;
  }
  return out;
}

}  // namespace lmdlab::sim
