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

#ifndef LMDLAB_OVERHEAD_OVERHEAD_HPP_
#define LMDLAB_OVERHEAD_OVERHEAD_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace lmdlab::overhead {

using Ratio = boost::rational<std::int64_t>;

class OverheadError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OverheadParams {
  std::int64_t n_att = 524;   // attestors per sub-committee
  std::int64_t n_agg = 16;    // aggregators per sub-committee
  std::int64_t n_limit = 8;   // evidence threshold
  std::int64_t sig_bytes = 96;
  std::int64_t subcommittees_per_slot = 64;
  std::int64_t aggregates_per_block = 128;
  std::int64_t avg_block_bytes = 101'500;

  // Throws OverheadError on negative sizes or n_limit >= n_agg.
  void validate() const;
};

// Coefficients of C_add, C_mul and C_pair.
struct CostVector {
  std::int64_t add = 0;
  std::int64_t mul = 0;
  std::int64_t pair = 0;

  friend bool operator==(const CostVector&, const CostVector&) = default;
  CostVector operator+(const CostVector& o) const {
    return {add + o.add, mul + o.mul, pair + o.pair};
  }
  CostVector operator-(const CostVector& o) const {
    return {add - o.add, mul - o.mul, pair - o.pair};
  }
  std::string to_string() const;
};

enum class AggregatorMode { Current, Practical };
enum class EvidenceCase { Optimistic, Worst };
enum class VerifierMode { Current, Optimistic, Worst };

std::int64_t current_block_aggregate_bytes(const OverheadParams& p);

struct EvidenceBytes {
  std::int64_t bytes = 0;
  std::int64_t delta_vs_current = 0;
  Ratio delta_fraction_of_block{0};
};

EvidenceBytes optimistic_evidence_bytes(const OverheadParams& p);
std::int64_t worst_case_evidence_bytes(const OverheadParams& p);

CostVector aggregator_cost(const OverheadParams& p, AggregatorMode mode);
CostVector proposer_extra_cost(const OverheadParams& p, EvidenceCase mode);
CostVector verifier_cost(const OverheadParams& p, VerifierMode mode);

std::int64_t aggregator_comm_overhead_bytes(const OverheadParams& p = {});

}  // namespace lmdlab::overhead

#endif  // LMDLAB_OVERHEAD_OVERHEAD_HPP_
