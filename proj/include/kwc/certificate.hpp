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
#include <optional>
#include <vector>

#include "kwc/arith.hpp"
#include "kwc/powersum.hpp"
#include "kwc/rigor.hpp"

namespace kwc {

// The four window conditions at n. With M = k! * primorial(H):
//   c0: 4^-4k < {f(n)} < 1/4
//   c1: {f^(i)(n)} < 1/(4 H^i) for 1 <= i < k, sup |f^(k)| on [n, n+H] < 1/(4^4k H^k)
//   c2: floor(f^(i)(n)) = 0 mod M for 1 <= i < k
//   c3: gcd(floor(f(n)), floor(f^(ell)(n))) = 1 for some ell in [1, k-1]
// c1_strong records the sharper bound 1/(4^6k H^k) on the k-th derivative.
struct WindowCertificate {
  PowerSumExpr f;
  mpz_class n;
  int k = 0;
  std::uint64_t H = 0;
  std::vector<mpz_class> floors;  // floor(f^(i)(n)), 0 <= i < k
  std::vector<Enclosure> frac_bounds;
  Enclosure kth_bound;
  std::optional<int> ell;
  bool c0 = false;
  bool c1 = false;
  bool c2 = false;
  bool c3 = false;
  bool c1_strong = false;

  bool all_hold() const { return c0 && c1 && c2 && c3; }
};

// Requires 2 <= k <= H and n >= 1. Throws Undecidable if a floor or a strict
// threshold cannot be separated within cfg.precision_cap.
WindowCertificate check_conditions(const PowerSumExpr& f, const mpz_class& n,
                                   int k, std::uint64_t H,
                                   const EvalConfig& cfg = {});

// sum_{i<k} h^i * (floors[i] / i!). Requires c0, c1, c2 (throws
// CertificateRejected otherwise) and 0 <= h <= H; h = 0 gives floors[0].
mpz_class reconstruct_window(const WindowCertificate& cert, std::uint64_t h);

// For a k-subset of the window whose floors share a factor: the smallest
// prime factor p of the gcd and whether p divides det V(h_1..h_k). When the
// certificate holds no such subset exists; if one did, p <= H or p | det
// would be forced.
struct VandermondeDiagnostic {
  std::vector<mpz_class> nodes;
  std::vector<mpz_class> floors;
  mpz_class gcd;
  mpz_class prime;
  bool prime_certain = true;  // false if the gcd has no factor below 10^6
                              // and is composite
  bool p_le_H = false;
  mpz_class det;
  bool p_divides_det = false;
};

struct VerificationReport {
  PowerSumExpr f;
  mpz_class n;
  int k = 0;
  std::uint64_t H = 0;
  std::vector<mpz_class> window_floors;  // floor(f(n+h)), h = 1..H
  std::optional<WindowCertificate> certificate;
  std::optional<bool> reconstruction_matches;
  std::optional<KwiseResult> kwise;
  bool small_primes_ok = false;
  std::optional<VandermondeDiagnostic> diagnostic;

  bool kwise_coprime() const { return kwise && kwise->coprime; }
};

VandermondeDiagnostic vandermonde_diagnostic(const std::vector<mpz_class>& nodes,
                                             const std::vector<mpz_class>& floors,
                                             std::uint64_t H);

// Recomputes the window floors directly and reports what holds. The
// certificate and k-wise check need 2 <= k <= H and are skipped otherwise.
VerificationReport verify_window(const PowerSumExpr& f, const mpz_class& n, int k,
                                 std::uint64_t H, const EvalConfig& cfg = {});

}  // namespace kwc
