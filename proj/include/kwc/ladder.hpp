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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kwc/certificate.hpp"
#include "kwc/powersum.hpp"
#include "kwc/rigor.hpp"

namespace kwc {

enum class LadderSource { defaults, user_override };

// Constants C_0..C_{k-1} and D_0..D_k. Stage t (1 <= t <= k-1) works on
// orders i >= m = k - t with A_i = 2^(t-1) C_i and B_i = D_i / 2^(t-1); the
// B_i stay exact rationals.
struct ConstantLadder {
  int k = 0;
  std::uint64_t H = 0;
  mpz_class modulus;  // k! * primorial(H)
  std::vector<mpz_class> C;
  std::vector<mpz_class> D;
  LadderSource source = LadderSource::defaults;

  mpq_class A(int stage, int i) const;
  mpq_class B(int stage, int i) const;
};

// Replacement values keyed by index. A_i / B_i keys name stage-1 values and
// are the same as C_i / D_i.
struct LadderOverrides {
  std::map<int, mpz_class> C;
  std::map<int, mpz_class> D;

  bool empty() const { return C.empty() && D.empty(); }
};

// "C0=4096,D1=2^11,B2=10^13": comma separated KEY=VALUE with KEY one of
// C<i>, D<i>, A<i>, B<i> and VALUE a decimal integer or base^exp.
LadderOverrides parse_overrides(std::string_view text);

// Defaults:
//   D_0 = 4 * 2^k, D_1 = 2^(8k) k! primorial(H), D_{i+1} = 2 D_i^6 (i <= k-2),
//   C_i = 2^(5(k-i)) D_i, D_k = (4 k! primorial(H) 2^k C_{k-1})^(6(k+1)).
ConstantLadder default_constants(int k, std::uint64_t H);

// Inequalities a ladder must satisfy at one stage t, with m = k - t:
//   B_i < A_i (m <= i <= k-1), B_i > B_{i-1}^6 (m < i <= k),
//   A strictly increasing on [m, k-1],
//   A_m < B_m^2 / (16 M), B_k > (4 M A_{k-1})^(k+1),
//   B_{m-1} < A_{m-1}, 20 B_{m-1} / A_{m-1} < B_m / A_m, M A_{m-1} < A_m.
std::vector<std::string> stage_violations(const ConstantLadder& ladder, int stage);

// Stage-independent requirements: positive entries and the seeding window
//   1/C_{k-1} <= 1/(2 D_{k-1}) - 1/D_k,  1/(2 D_{k-1}) + 1/D_k <= 1/D_{k-1}.
std::vector<std::string> seeding_violations(const ConstantLadder& ladder);

// All of the above over every stage.
std::vector<std::string> admissibility_violations(const ConstantLadder& ladder);

// Defaults with overrides applied; admissibility is not checked.
ConstantLadder apply_overrides(int k, std::uint64_t H, const LadderOverrides& overrides);

// Requires 2 <= k <= H. Throws InadmissibleLadder listing every violated
// inequality.

ConstantLadder build_constants(int k, std::uint64_t H,
                               const LadderOverrides& overrides = {});

struct OrderState {
  int order = 0;
  mpz_class floor_part;
  mpz_class residue;  // required class of floor_part modulo M
  Enclosure frac;
};

// floor(f^(i)(n0)) = residue_i (mod M) and {f^(i)(n0)} in (1/A_i, 1/B_i) at
// `stage`, for every i in [m, k-1].
struct LadderState {
  int m = 0;
  int stage = 0;
  mpz_class n0;
  std::vector<OrderState> orders;  // ascending order i
};

struct IncrementSample {
  mpz_class h;
  Enclosure increment;  // a_{h+1} - a_h
};

struct Probe {
  mpz_class h;
  Enclosure value;  // a_h
  int sign = 0;     // sign(a_h - b)
};

struct LadderTrace {
  int m = 0;  // order being localized is m - 1
  int stage = 0;
  mpz_class R;
  mpz_class b;
  mpz_class r;
  mpz_class r0;
  mpz_class t;
  mpz_class s;
  mpz_class n1;
  std::vector<IncrementSample> increments;
  std::vector<Probe> probes;
};

enum class RootSearch { binary, linear };

struct LadderOptions {
  RootSearch search = RootSearch::binary;
  bool trace = false;  // keep every probe, not only binary-search pivots
};

struct SeedResult {
  mpz_class x0;        // sup |f^(k)| < 1/D_k and f^(k) > 0 on [x0, inf)
  unsigned long s = 0;
  mpz_class target_floor;  // (k!)^s primorial(H)
  mpq_class threshold;     // target_floor + 1/(2 D_{k-1})
  mpz_class n;             // least integer with f^(k-1)(n) > threshold
  Enclosure frac;
  std::uint64_t evaluations = 0;
};

// Throws HypothesisFailure if the lim / limsup hypotheses fail for f and k.
SeedResult seed_top_level(const PowerSumExpr& f, int k, const ConstantLadder& ladder,
                          const EvalConfig& cfg = {});

// The seed as a stage-1 state (m = k-1).
LadderState initial_state(const SeedResult& seed, const ConstantLadder& ladder);

// Localizes order m-1 next to state.n0 with floor = target (mod M).
// Throws InadmissibleLadder if the stage inequalities fail, and
// InternalContradiction if a step the argument guarantees does not happen
// (no b in (a_0, a_R), out-of-range increment or a failed postcondition).
std::pair<LadderState, LadderTrace> ladder_step(
    const PowerSumExpr& f, const LadderState& state, const mpz_class& target,
    const ConstantLadder& ladder, const LadderOptions& options = {},
    const EvalConfig& cfg = {});

struct WitnessResult {
  mpz_class n0;
  WindowCertificate certificate;
  ConstantLadder ladder;
  SeedResult seed;
  std::vector<LadderTrace> steps;
  mpz_class displacement;  // n0 - seed.n
  Enclosure drift;         // f^(k-1)(n0) - f^(k-1)(seed.n)
};

// Seeds, runs k-1 ladder steps with residues v_0 = 1, v_i = 0, and checks the
// final window. Throws CertificateRejected if the conditions do not all hold.
WitnessResult construct_witness(const PowerSumExpr& f, int k, std::uint64_t H,
                                const std::optional<ConstantLadder>& ladder = std::nullopt,
                                const LadderOptions& options = {},
                                const EvalConfig& cfg = {});

}  // namespace kwc
