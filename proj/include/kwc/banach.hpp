// Copyright 2026 The kwc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kwc/ladder.hpp"
#include "kwc/powersum.hpp"
#include "kwc/rigor.hpp"

namespace kwc {

// Covers {n+1, ..., n+H}.
struct BanachBlock {
  mpz_class n;
  std::uint64_t H = 0;
  bool certified = false;
};

// Blocks are ordered with n_r > n_{r-1} + H_{r-1}; elements are never
// materialized beyond what a check needs.
struct BanachSet {
  PowerSumExpr f;
  int k = 2;
  std::vector<BanachBlock> blocks;

  std::uint64_t element_count() const;
  mpz_class element(std::uint64_t index) const;  // 0-based, increasing
};

// Least integer strictly above H + sum_{1<=j<=H} |f(n+j)| for prev = (n, H).
std::uint64_t schedule_H(const BanachBlock& prev, const PowerSumExpr& f,
                         const EvalConfig& cfg = {});

// Returns n > lower whose window of length H is meant to satisfy all four
// certificate conditions; build_banach_set re-verifies independently.
using WitnessProvider = std::function<mpz_class(const PowerSumExpr& f, int k, std::uint64_t H,
                                                const mpz_class& lower)>;

// Runs the constructive pipeline; fails unless its witness clears `lower`.
// Constants are rebuilt per window length; empty overrides mean defaults.
WitnessProvider pipeline_provider(LadderOverrides overrides = {}, LadderOptions options = {},
                                  EvalConfig cfg = {});

// Tries n = max(lower + 1, start), ... for at most `attempts` values.
WitnessProvider search_provider(mpz_class start, std::uint64_t attempts, EvalConfig cfg = {});

// f = 1 + x / 2^m: a fixed function certified on every window inside
// (2^(m-8k), 2^(m-2)), used to exercise the block schedule cheaply.
PowerSumExpr synthetic_banach_function(int m);
WitnessProvider synthetic_provider(int m, int k, EvalConfig cfg = {});

// Builds r_max blocks starting from window length H1 (k when 0). Every
// block's certificate is recomputed; a block that fails it, or a provider
// answer not above the previous block, raises CertificateRejected.
BanachSet build_banach_set(const PowerSumExpr& f, int k, std::uint64_t r_max,
                           const WitnessProvider& provider, std::uint64_t H1 = 0,
                           const EvalConfig& cfg = {});

// Structural checks: ordering, disjointness and the schedule inequality.
std::vector<std::string> schedule_violations(const BanachSet& set, const EvalConfig& cfg = {});

// max over windows (n_r, n_r + H] of |A ∩ window| / H; 0 for the empty set.
mpq_class banach_density_estimate(const BanachSet& set, std::uint64_t H);

struct CrossBlockResult {
  bool holds = true;
  bool exhaustive = false;
  std::uint64_t subsets_checked = 0;
  std::vector<mpz_class> failing_elements;
  mpz_class failing_gcd;
};

// k-subsets of the elements have coprime floors. Exhaustive when
// C(|A|, k) <= exhaustive_limit, otherwise `samples` seeded draws; draw i
// depends only on (seed, i), so sharding over `jobs` is deterministic.
CrossBlockResult cross_block_check(const BanachSet& set, int k, std::uint64_t samples,
                                   std::uint64_t seed, unsigned jobs = 1,
                                   std::uint64_t exhaustive_limit = 100000,
                                   const EvalConfig& cfg = {});

}  // namespace kwc
