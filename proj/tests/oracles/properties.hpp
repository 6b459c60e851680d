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

// Property sweeps shared by the unit suites and the acceptance binary. Each
// returns how many cases ran and how many broke the property.

#ifndef LMDLAB_TESTS_PROPERTIES_HPP_
#define LMDLAB_TESTS_PROPERTIES_HPP_

#include <cstdint>
#include <string>

namespace lmdlab::oracle {

struct PropertyResult {
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
  void fail(std::string what) {
    if (failures++ == 0) first_failure = std::move(what);
  }
};

// Every tree with up to 6 blocks against every vote multiset of up to 6
// voters, under both tie-break policies.
PropertyResult fork_choice_exhaustive();

// Inserting evidence never turns a timely DAG vote untimely. `newly_timely`
// counts cases where the insertion made a vote timely.
PropertyResult dag_timeliness_monotone(std::uint64_t cases, std::uint64_t seed,
                                       std::uint64_t* newly_timely = nullptr);

// Every bundled scenario renders the same report and trace `runs` times.
PropertyResult bundled_determinism(int runs);

// No non-adversarial agent equivocates in any bundled scenario, under the
// named strategies and `random_profiles` sampled profiles per game.
PropertyResult bundled_no_honest_equivocation(std::size_t random_profiles);

}  // namespace lmdlab::oracle

#endif  // LMDLAB_TESTS_PROPERTIES_HPP_
