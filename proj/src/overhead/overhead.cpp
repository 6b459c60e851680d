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

#include "lmdlab/overhead/overhead.hpp"

#include <sstream>

namespace lmdlab::overhead {

namespace {

// Aggregation lists are bitfields, so sizes are tracked in bits and only
// converted to bytes for the whole block.
std::int64_t bits_to_bytes(std::int64_t bits) {
  if (bits % 8 != 0) {
    throw OverheadError("block total of " + std::to_string(bits) +
                        " bits is not a whole number of bytes");
  }
  return bits / 8;
}

}  // namespace

void OverheadParams::validate() const {
  if (n_att < 0 || n_agg < 0 || n_limit < 0 || sig_bytes < 0 ||
      subcommittees_per_slot < 0 || aggregates_per_block < 0 ||
      avg_block_bytes <= 0) {
    throw OverheadError("overhead parameters must be non-negative");
  }
  if (n_agg > 0 && n_limit >= n_agg) {
    throw OverheadError("evidence threshold must be below the aggregator count");
  }
}

std::string CostVector::to_string() const {
  std::ostringstream os;
  os << add << " C_add + " << mul << " C_mul + " << pair << " C_pair";
  return os.str();
}

std::int64_t current_block_aggregate_bytes(const OverheadParams& p) {
  return bits_to_bytes(p.aggregates_per_block * (8 * p.sig_bytes + p.n_att));
}

EvidenceBytes optimistic_evidence_bytes(const OverheadParams& p) {
  EvidenceBytes e;
  e.bytes = bits_to_bytes(p.aggregates_per_block *
                          (2 * 8 * p.sig_bytes + p.n_agg + p.n_att));
  e.delta_vs_current = e.bytes - current_block_aggregate_bytes(p);
  e.delta_fraction_of_block = Ratio(e.delta_vs_current, p.avg_block_bytes);
  return e;
}

std::int64_t worst_case_evidence_bytes(const OverheadParams& p) {
  return bits_to_bytes(p.aggregates_per_block * p.n_agg *
                       (2 * 8 * p.sig_bytes + p.n_att));
}

CostVector aggregator_cost(const OverheadParams& p, AggregatorMode mode) {
  const std::int64_t n = p.n_att;
  if (mode == AggregatorMode::Current) return {n - 1, 1, 2 * n};
  return {2 * (n - 1), 2, 2 * (n + 1)};
}

CostVector proposer_extra_cost(const OverheadParams& p, EvidenceCase mode) {
  const std::int64_t pairings = p.aggregates_per_block * p.n_agg;
  if (mode == EvidenceCase::Worst) return {0, 0, pairings};
  return {p.subcommittees_per_slot * (p.n_agg - 1), 0, pairings};
}

CostVector verifier_cost(const OverheadParams& p, VerifierMode mode) {
  const std::int64_t s = p.subcommittees_per_slot;
  switch (mode) {
    case VerifierMode::Current:
      return {s * (p.n_att - 1), 0, 2 * s};
    case VerifierMode::Optimistic:
      return {s * (2 * p.n_att + p.n_agg - 3), 0, 6 * s};
    case VerifierMode::Worst:
      return {s * (p.n_att - 1) * (p.n_agg + 1), 0, s * (2 + 4 * p.n_agg)};
  }
  return {};
}

std::int64_t aggregator_comm_overhead_bytes(const OverheadParams& p) {
  return 2 * p.sig_bytes;
}

}  // namespace lmdlab::overhead
