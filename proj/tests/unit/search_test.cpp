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

#include <gtest/gtest.h>

#include <random>

#include "kwc/errors.hpp"
#include "kwc/ladder.hpp"
#include "kwc/scan.hpp"

namespace kwc {
namespace {

LadderOverrides small_overrides() {
  return parse_overrides("C0=2^12,C1=2^15,D0=8,D1=2^11,D2=2^67");
}

TEST(Scan, ThreeHalvesFirstWitness) {
  auto r = brute_scan(parse_function("x^(3/2)"), 2, 3, 1, 100);
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_EQ(r.witnesses.front(), 2);
  EXPECT_EQ(r.scanned, 100u);
}

TEST(Scan, SquarePlusReciprocalIsEmpty) {
  ScanOptions opt;
  opt.record_rejections = true;
  auto r = brute_scan(parse_function("x^2 + 1/x"), 2, 4, 2, 1000, opt);
  EXPECT_TRUE(r.witnesses.empty());
  EXPECT_TRUE(r.undecided.empty());
  ASSERT_EQ(r.rejections.size(), 999u);
  for (const auto& rej : r.rejections) {
    EXPECT_GT(rej.gcd, 1);
    // Floors are (n+h)^2, and four consecutive integers hold two evens.
    int evens = 0;
    for (long h = 1; h <= 4; ++h) evens += ((rej.n + h) % 2 == 0) ? 1 : 0;
    EXPECT_EQ(evens, 2);
  }
}

TEST(Scan, SquaresAreAllWitnesses) {
  auto r = brute_scan(parse_function("x^2"), 2, 2, 1, 10);
  EXPECT_EQ(r.witnesses.size(), 10u);
}

TEST(Scan, ShardingIsDeterministic) {
  auto f = parse_function("x^(7/4)");
  ScanOptions one, four;
  four.jobs = 4;
  auto a = brute_scan(f, 2, 3, 1, 500, one);
  auto b = brute_scan(f, 2, 3, 1, 500, four);
  EXPECT_EQ(a.witnesses, b.witnesses);
  EXPECT_EQ(b.scanned, 500u);
}

TEST(Scan, PairwiseIsStricterThanKwise) {
  auto f = parse_function("x^(3/2)");
  ScanOptions pw;
  pw.mode = ScanMode::pairwise;
  auto k3 = brute_scan(f, 3, 5, 1, 300);
  auto p = brute_scan(f, 3, 5, 1, 300, pw);
  for (const auto& n : p.witnesses) {
    EXPECT_TRUE(std::find(k3.witnesses.begin(), k3.witnesses.end(), n) != k3.witnesses.end());
  }
  EXPECT_THROW(brute_scan(f, 3, 2, 1, 10), InputError);
  EXPECT_THROW(brute_scan(f, 2, 2, 10, 1), InputError);
}

TEST(Constants, DefaultsKTwo) {
  auto L = build_constants(2, 2);
  EXPECT_EQ(L.D[0], 16);
  EXPECT_EQ(L.D[1], mpz_class(1) << 18);
  EXPECT_EQ(L.C[1], mpz_class(1) << 23);
  EXPECT_EQ(L.C[0], mpz_class(1) << 14);
  EXPECT_EQ(L.D[2], mpz_class(1) << 522);
  EXPECT_EQ(L.modulus, 4);
  EXPECT_EQ(L.source, LadderSource::defaults);
}

TEST(Constants, DefaultsKThree) {
  auto L = build_constants(3, 3);
  EXPECT_EQ(L.D[1], (mpz_class(1) << 24) * 36);
  mpz_class d1_6;
  mpz_pow_ui(d1_6.get_mpz_t(), L.D[1].get_mpz_t(), 6);
  EXPECT_EQ(L.D[2], 2 * d1_6);
}

TEST(Constants, DefaultsAreAdmissible) {
  for (int k = 2; k <= 4; ++k) {
    for (std::uint64_t H = static_cast<std::uint64_t>(k); H <= 7; ++H) {
      EXPECT_TRUE(admissibility_violations(default_constants(k, H)).empty()) << k << " " << H;
    }
  }
}

TEST(Constants, OverrideRejectedWhenSixthPowerFails) {
  try {
    build_constants(2, 2, parse_overrides("B1=100,B2=10^11"));
    FAIL();
  } catch (const InadmissibleLadder& e) {
    EXPECT_NE(std::string(e.what()).find("B_2 > B_1^6"), std::string::npos) << e.what();
  }
}

TEST(Constants, SmallOverrideAccepted) {
  auto L = build_constants(2, 2, small_overrides());
  EXPECT_EQ(L.source, LadderSource::user_override);
  EXPECT_EQ(L.D[2], mpz_class(1) << 67);
}

TEST(Constants, OverrideParsing) {
  EXPECT_THROW(parse_overrides("Q1=3"), InputError);
  EXPECT_THROW(parse_overrides("C1"), InputError);
  EXPECT_THROW(parse_overrides("C1=abc"), InputError);
  EXPECT_THROW(build_constants(2, 2, parse_overrides("C5=3")), InputError);
  auto o = parse_overrides(" A0 = 10 , D2=3^4 ");
  EXPECT_EQ(o.C.at(0), 10);
  EXPECT_EQ(o.D.at(2), 81);
}

TEST(Seed, RejectsSquarePlusReciprocal) {
  auto L = build_constants(3, 3);
  EXPECT_THROW(seed_top_level(parse_function("x^2 + 1/x"), 3, L), HypothesisFailure);
  EXPECT_THROW(construct_witness(parse_function("x^2 + 1/x"), 3, 3), HypothesisFailure);
}

TEST(Seed, SmallLadderPostconditions) {
  auto L = build_constants(2, 2, small_overrides());
  auto f = parse_function("x^(3/2)");
  auto seed = seed_top_level(f, 2, L);
  // f'' = (3/4) x^(-1/2) < 2^-67 needs x > (3/4)^2 2^134.
  EXPECT_GT(seed.x0, (mpz_class(1) << 133));
  EXPECT_LT(seed.x0, (mpz_class(1) << 134));
  auto ff = floor_frac(differentiate(f, 1), seed.n, 0);
  mpz_class want = mpz_class(2) << seed.s;  // (2!)^s * primorial(2)
  EXPECT_EQ(ff.floor_part, want);
  EXPECT_GT(ff.frac.lo_double(), 1.0 / (1 << 15));
  EXPECT_LT(ff.frac.hi_double(), 1.0 / (1 << 11));
  // n is the least integer past the threshold.
  EXPECT_LE(compare_value(differentiate(f, 1), seed.n - 1, seed.threshold), 0);
}

TEST(Ladder, StepAgainstLinearOracle) {
  auto L = build_constants(2, 2, small_overrides());
  auto f = parse_function("x^(3/2)");
  auto seed = seed_top_level(f, 2, L);
  auto state = initial_state(seed, L);
  LadderOptions linear;
  linear.search = RootSearch::linear;
  auto [sb, tb] = ladder_step(f, state, 1, L);
  auto [sl, tl] = ladder_step(f, state, 1, L, linear);
  EXPECT_EQ(tb.r, tl.r);
  EXPECT_EQ(tb.n1, tl.n1);
  EXPECT_EQ(tb.R, mpz_class(1) << 18);
  EXPECT_EQ(tb.s, tb.r + tb.t);
  EXPECT_EQ(tb.s % 4, 0);
  EXPECT_LE(tb.n1 - state.n0, 4 * 4 * (mpz_class(1) << 15));
  ASSERT_EQ(sb.m, 0);
  EXPECT_EQ(sb.orders[0].floor_part % 4, 1);
  for (const auto& inc : tb.increments) {
    EXPECT_GT(inc.increment.lo_double(), 1.0 / (3 << 15));
    EXPECT_LT(inc.increment.hi_double(), 3.0 / (1 << 11));
  }
}

TEST(Ladder, ArbitraryTargets) {
  auto L = build_constants(2, 2, small_overrides());
  auto f = parse_function("x^(3/2)");
  auto state = initial_state(seed_top_level(f, 2, L), L);
  for (long v : {-7L, 0L, 2L, 3L, 1001L}) {
    auto [next, tr] = ladder_step(f, state, v, L);
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), next.orders[0].floor_part.get_mpz_t(), 4);
    mpz_class want;
    mpz_fdiv_r_ui(want.get_mpz_t(), mpz_class(v).get_mpz_t(), 4);
    EXPECT_EQ(r, want) << v;
  }
}

TEST(Ladder, InadmissibleStageRejectedBeforeSearch) {
  auto L = build_constants(2, 2, small_overrides());
  auto f = parse_function("x^(3/2)");
  auto state = initial_state(seed_top_level(f, 2, L), L);
  L.D[0] = 1000;  // 20 B_0 / A_0 no longer below B_1 / A_1
  EXPECT_THROW(ladder_step(f, state, 1, L), InadmissibleLadder);
}

TEST(Witness, SmallLadderEndToEnd) {
  auto L = build_constants(2, 2, small_overrides());
  auto f = parse_function("x^(3/2)");
  auto w = construct_witness(f, 2, 2, L);
  EXPECT_TRUE(w.certificate.all_hold());
  auto v = verify_window(f, w.n0, 2, 2);
  EXPECT_TRUE(v.kwise_coprime());
  EXPECT_TRUE(*v.reconstruction_matches);
  EXPECT_EQ(w.steps.size(), 1u);
  // Determinism
  auto again = construct_witness(f, 2, 2, L);
  EXPECT_EQ(again.n0, w.n0);
}

TEST(Witness, DefaultsThreeHalves) {
  auto f = parse_function("x^(3/2)");
  auto w = construct_witness(f, 2, 2);
  EXPECT_TRUE(w.certificate.all_hold());
  EXPECT_TRUE(w.certificate.c1_strong);
  EXPECT_EQ(w.steps[0].R, mpz_class(1) << 26);
  const auto bits = mpz_sizeinbase(w.n0.get_mpz_t(), 2);
  EXPECT_GE(bits, 1040u);
  EXPECT_LE(bits, 1050u);
  auto v = verify_window(f, w.n0, 2, 2);
  EXPECT_TRUE(v.kwise_coprime());
}

}  // namespace
}  // namespace kwc
