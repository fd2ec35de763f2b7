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

#include "kwc/certificate.hpp"
#include "kwc/errors.hpp"
#include "support/generators.hpp"

namespace kwc {
namespace {

std::vector<mpz_class> zs(std::initializer_list<long> v) {
  return std::vector<mpz_class>(v.begin(), v.end());
}

const PowerSumExpr& linear_family() {
  static const PowerSumExpr f = parse_function("4*x + 1 + x/2^20");
  return f;
}

TEST(Conditions, AllHoldOnLinearFamily) {
  auto c = check_conditions(linear_family(), 1024, 2, 2);
  EXPECT_TRUE(c.c0);
  EXPECT_TRUE(c.c1);
  EXPECT_TRUE(c.c1_strong);
  EXPECT_TRUE(c.c2);
  EXPECT_TRUE(c.c3);
  EXPECT_TRUE(c.all_hold());
  EXPECT_EQ(c.floors, zs({4097, 4}));
  EXPECT_EQ(*c.frac_bounds[0].exact_value(), mpq_class(1, 1024));
  EXPECT_EQ(*c.frac_bounds[1].exact_value(), mpq_class(1, 1 << 20));
  EXPECT_EQ(c.ell, 1);
}

TEST(Conditions, FracTooSmallAtOne) {
  auto c = check_conditions(linear_family(), 1, 2, 2);
  EXPECT_FALSE(c.c0);
}

TEST(Conditions, ThreeHalvesFailsDivisibility) {
  auto c = check_conditions(parse_function("x^(3/2)"), 5, 2, 4);
  EXPECT_EQ(c.floors[1], 3);
  EXPECT_FALSE(c.c2);
  EXPECT_FALSE(c.all_hold());
}

TEST(Conditions, Preconditions) {
  EXPECT_THROW(check_conditions(linear_family(), 1024, 3, 2), InputError);
  EXPECT_THROW(check_conditions(linear_family(), 1024, 1, 2), InputError);
  EXPECT_THROW(check_conditions(linear_family(), 0, 2, 2), InputError);
}

TEST(Conditions, ThresholdEqualityIsNotStrict) {
  // {f(1)} = 1/4 exactly: c0 demands a strict inequality.
  auto c = check_conditions(parse_function("4*x + 1/4"), 1, 2, 2);
  EXPECT_FALSE(c.c0);
}

TEST(Reconstruct, Examples) {
  auto c = check_conditions(linear_family(), 1024, 2, 2);
  EXPECT_EQ(reconstruct_window(c, 2), 4105);
  EXPECT_EQ(reconstruct_window(c, 1), 4101);
  EXPECT_EQ(reconstruct_window(c, 0), 4097);
  EXPECT_THROW(reconstruct_window(c, 3), InputError);
  auto bad = check_conditions(linear_family(), 1, 2, 2);
  EXPECT_THROW(reconstruct_window(bad, 1), CertificateRejected);
}

TEST(Verify, LinearFamily) {
  auto r = verify_window(linear_family(), 1024, 2, 2);
  EXPECT_EQ(r.window_floors, zs({4101, 4105}));
  ASSERT_TRUE(r.reconstruction_matches.has_value());
  EXPECT_TRUE(*r.reconstruction_matches);
  EXPECT_TRUE(r.kwise_coprime());
  EXPECT_TRUE(r.small_primes_ok);
  EXPECT_FALSE(r.diagnostic.has_value());
}

TEST(Verify, ThreeHalvesSmallWindow) {
  auto r = verify_window(parse_function("x^(3/2)"), 2, 2, 3);
  EXPECT_EQ(r.window_floors, zs({5, 8, 11}));
  EXPECT_TRUE(r.kwise_coprime());
}

TEST(Verify, SquarePlusReciprocalHasEvenPair) {
  auto r = verify_window(parse_function("x^2 + 1/x"), 5, 2, 4);
  EXPECT_EQ(r.window_floors, zs({36, 49, 64, 81}));
  EXPECT_FALSE(r.kwise_coprime());
  EXPECT_EQ(r.kwise->failing_values, zs({36, 64}));
  ASSERT_TRUE(r.diagnostic.has_value());
  EXPECT_EQ(r.diagnostic->prime, 2);
  EXPECT_TRUE(r.diagnostic->p_le_H);
  EXPECT_EQ(r.diagnostic->nodes, zs({1, 3}));
  EXPECT_EQ(r.diagnostic->det, 2);
}

// f = sum_{2<=j<k} a_j M x^j + c M x + 1 + x / 2^m: every derivative
// floor below k is a multiple of M = k! * primorial(H), the fractional parts
// are n/2^m and 2^-m, and f^(k) vanishes.
using testing::Synthetic;

Synthetic random_synthetic(std::mt19937_64& rng) {
  const int k = 2 + static_cast<int>(rng() % 3);
  const std::uint64_t H = static_cast<std::uint64_t>(k) + rng() % 6;
  return testing::random_synthetic(rng, k, H);
}

TEST(Property, SyntheticCertificatesAreSound) {
  std::mt19937_64 rng(41);
  int certified = 0;
  for (int trial = 0; trial < 150; ++trial) {
    Synthetic s = random_synthetic(rng);
    auto r = verify_window(s.f, s.n, s.k, s.H);
    ASSERT_TRUE(r.certificate.has_value());
    const auto& c = *r.certificate;
    EXPECT_TRUE(c.c0 && c.c1 && c.c2) << s.f.to_string() << " n=" << s.n;
    if (!c.all_hold()) continue;
    ++certified;
    EXPECT_TRUE(r.kwise_coprime()) << s.f.to_string() << " n=" << s.n;
    EXPECT_TRUE(*r.reconstruction_matches);
    EXPECT_TRUE(r.small_primes_ok);
    for (int i = 1; i < s.k; ++i) {
      const mpz_class fi = factorial(static_cast<std::uint64_t>(i));
      EXPECT_TRUE(mpz_divisible_p(c.floors[i].get_mpz_t(), fi.get_mpz_t()));
    }
  }
  EXPECT_GT(certified, 100);
}

TEST(Property, NoCommonPrimeInCertifiedWindows) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    Synthetic s = random_synthetic(rng);
    auto r = verify_window(s.f, s.n, s.k, s.H);
    if (!r.certificate->all_hold()) continue;
    // Every k-subset: no prime divides all of its floors.
    std::vector<bool> mask(s.H, false);
    std::fill(mask.begin(), mask.begin() + s.k, true);
    do {
      std::vector<mpz_class> floors;
      for (std::size_t i = 0; i < s.H; ++i) {
        if (mask[i]) floors.push_back(r.window_floors[i]);
      }
      EXPECT_EQ(gcd_tuple(floors), 1);
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
}

TEST(Diagnostic, PrimeAboveHDoesNotDivideDeterminant) {
  // Floors 7*3 and 7*5 share p = 7 > H = 6; det V(1, 5) = 4.
  auto d = vandermonde_diagnostic(zs({1, 5}), zs({21, 35}), 6);
  EXPECT_EQ(d.prime, 7);
  EXPECT_FALSE(d.p_le_H);
  EXPECT_EQ(d.det, 4);
  EXPECT_FALSE(d.p_divides_det);
}

}  // namespace
}  // namespace kwc
