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

#include <doctest.h>

#include "lmdlab/overhead/overhead.hpp"

using namespace lmdlab::overhead;

namespace {

OverheadParams with_agg(std::int64_t n_agg) {
  OverheadParams p;
  p.n_agg = n_agg;
  p.n_limit = n_agg / 2;
  return p;
}

}  // namespace

TEST_SUITE("overhead") {

TEST_CASE("block aggregate bytes") {
  OverheadParams p;
  CHECK(current_block_aggregate_bytes(p) == 20672);
  p.n_att = 0;
  CHECK(current_block_aggregate_bytes(p) == 12288);
  p.n_att = 8;
  CHECK(current_block_aggregate_bytes(p) == 12416);
}

TEST_CASE("optimistic evidence bytes") {
  const auto e16 = optimistic_evidence_bytes(with_agg(16));
  CHECK(e16.bytes == 33216);
  CHECK(e16.delta_vs_current == 12544);
  CHECK(e16.delta_fraction_of_block == Ratio(12544, 101500));
  CHECK(boost::rational_cast<double>(e16.delta_fraction_of_block) ==
        doctest::Approx(0.1236).epsilon(0.001));
  const auto e128 = optimistic_evidence_bytes(with_agg(128));
  CHECK(e128.bytes == 35008);
  CHECK(e128.delta_vs_current == 14336);
  CHECK(boost::rational_cast<double>(e128.delta_fraction_of_block) ==
        doctest::Approx(0.1412).epsilon(0.001));
  CHECK(optimistic_evidence_bytes(with_agg(0)).bytes == 32960);
  for (std::int64_t a = 0; a <= 512; ++a) {
    CHECK(optimistic_evidence_bytes(with_agg(a)).bytes == 32960 + 16 * a);
  }
}

TEST_CASE("worst case evidence bytes") {
  CHECK(worst_case_evidence_bytes(with_agg(16)) == 527360);
  CHECK(worst_case_evidence_bytes(with_agg(128)) == 4218880);
  CHECK(worst_case_evidence_bytes(with_agg(1)) == 32960);
  // A single aggregator saves the 16 bytes of aggregator bitfield.
  CHECK(worst_case_evidence_bytes(with_agg(1)) + 16 == optimistic_evidence_bytes(with_agg(1)).bytes);
  for (std::int64_t a = 2; a <= 512; ++a) {
    CHECK(worst_case_evidence_bytes(with_agg(a)) >= optimistic_evidence_bytes(with_agg(a)).bytes);
  }
}

TEST_CASE("fractional bit totals are rejected") {
  OverheadParams p;
  p.aggregates_per_block = 1;
  p.n_att = 3;
  CHECK_THROWS_AS(current_block_aggregate_bytes(p), OverheadError);
}

TEST_CASE("aggregator cost") {
  OverheadParams p;
  CHECK(aggregator_cost(p, AggregatorMode::Practical) == CostVector{1046, 2, 1050});
  CHECK(aggregator_cost(p, AggregatorMode::Current) == CostVector{523, 1, 1048});
  for (std::int64_t n = 1; n <= 600; ++n) {
    p.n_att = n;
    CHECK(aggregator_cost(p, AggregatorMode::Practical) ==
          aggregator_cost(p, AggregatorMode::Current) + CostVector{n - 1, 1, 2});
  }
  p.n_att = 1;
  CHECK(aggregator_cost(p, AggregatorMode::Current) == CostVector{0, 1, 2});
}

TEST_CASE("proposer extra cost") {
  CHECK(proposer_extra_cost(with_agg(16), EvidenceCase::Optimistic) == CostVector{960, 0, 2048});
  CHECK(proposer_extra_cost(with_agg(16), EvidenceCase::Worst) == CostVector{0, 0, 2048});
  OverheadParams one;
  one.n_agg = 1;
  one.n_limit = 0;
  CHECK(proposer_extra_cost(one, EvidenceCase::Optimistic) == CostVector{0, 0, 128});
  CHECK(proposer_extra_cost(with_agg(128), EvidenceCase::Optimistic) ==
        CostVector{64 * 127, 0, 128 * 128});
}

TEST_CASE("verifier cost") {
  CHECK(verifier_cost(with_agg(16), VerifierMode::Optimistic) == CostVector{67904, 0, 384});
  CHECK(verifier_cost(with_agg(16), VerifierMode::Worst) == CostVector{569024, 0, 4224});
  CHECK(verifier_cost(with_agg(16), VerifierMode::Current) == CostVector{64 * 523, 0, 128});
  OverheadParams p;
  p.n_att = 1;
  CHECK(verifier_cost(p, VerifierMode::Current) == CostVector{0, 0, 128});
  CHECK(verifier_cost(with_agg(128), VerifierMode::Optimistic) ==
        CostVector{64 * (2 * 524 + 128 - 3), 0, 384});
}

TEST_CASE("communication overhead") {
  CHECK(aggregator_comm_overhead_bytes() == 192);
  OverheadParams p;
  p.sig_bytes = 48;
  CHECK(aggregator_comm_overhead_bytes(p) == 96);
  p.sig_bytes = 0;
  CHECK(aggregator_comm_overhead_bytes(p) == 0);
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(with_agg(16).validate());
  OverheadParams p;
  p.n_limit = 16;
  CHECK_THROWS_AS(p.validate(), OverheadError);
  p = OverheadParams{};
  p.n_att = -1;
  CHECK_THROWS_AS(p.validate(), OverheadError);
  CHECK(CostVector{1, 2, 3}.to_string() == "1 C_add + 2 C_mul + 3 C_pair");
}

}  // TEST_SUITE
