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
#include <string>
#include <vector>

#include "kwc/powersum.hpp"
#include "kwc/rigor.hpp"

namespace kwc {

enum class ScanMode { kwise, pairwise };

struct ScanOptions {
  ScanMode mode = ScanMode::kwise;
  unsigned jobs = 1;
  bool record_rejections = false;
};

struct ScanRejection {
  mpz_class n;
  std::vector<std::size_t> failing_offsets;  // h values, 1-based
  mpz_class gcd;
};

struct ScanUndecided {
  mpz_class n;
  std::string reason;
};

struct ScanResult {
  std::vector<mpz_class> witnesses;
  std::vector<ScanUndecided> undecided;
  std::vector<ScanRejection> rejections;  // filled when record_rejections
  std::uint64_t scanned = 0;
};

// Every n in [lo, hi] whose window floor(f(n+1)), ..., floor(f(n+H)) is
// k-wise coprime (pairwise mode uses k = 2). Each witness is re-verified by
// verify_window; a disagreement raises InternalContradiction. The range is
// split into contiguous shards, one per job, and merged in order, so results
// do not depend on the job count.
ScanResult brute_scan(const PowerSumExpr& f, int k, std::uint64_t H,
                      const mpz_class& lo, const mpz_class& hi,
                      const ScanOptions& options = {}, const EvalConfig& cfg = {});

}  // namespace kwc
