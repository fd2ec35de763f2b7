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

#include <numeric>

#include "kwc/density.hpp"
#include "kwc/errors.hpp"

namespace kwc {
namespace {

TEST(Dirichlet, Examples) {
  auto a = dirichlet_density(1);
  EXPECT_EQ(a.count, 1);
  EXPECT_EQ(a.frequency, 1);
  auto b = dirichlet_density(100);
  EXPECT_EQ(b.count, 6087);
  EXPECT_EQ(b.frequency, mpq_class(6087, 10000));
  ASSERT_TRUE(b.cross_check.has_value());
  EXPECT_EQ(*b.cross_check, 6087);
  auto c = dirichlet_density(10000);
  EXPECT_FALSE(c.cross_check.has_value());
  EXPECT_LT(c.deviation, 0.001);
  EXPECT_THROW(dirichlet_density(0), InputError);
}

TEST(Dirichlet, MobiusMatchesDirectCountUpTo2000) {
  const auto table = coprime_pairs_table(2000);
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    ASSERT_EQ(coprime_pairs_mobius(n), static_cast<unsigned long>(table[n])) << n;
  }
}

TEST(Beatty, SmallTable) {
  // floor(sqrt(2) n) = 1,2,4,5,7,8,9,11,12,14
  const long floors[] = {1, 2, 4, 5, 7, 8, 9, 11, 12, 14};
  long want = 0;
  for (long n = 1; n <= 10; ++n) want += std::gcd(n, floors[n - 1]) == 1 ? 1 : 0;
  auto r = beatty_coprime_density(Surd::make(1, 2), 10);
  EXPECT_EQ(r.count, want);
  EXPECT_EQ(r.total, 10);
}

TEST(Beatty, Frequencies) {
  EXPECT_LT(beatty_coprime_density(Surd::make(1, 2), 1000).deviation, 0.03);
  EXPECT_LT(beatty_coprime_density(Surd::make(1, 3), 1000).deviation, 0.03);
  EXPECT_THROW(beatty_coprime_density(Surd(mpq_class(3, 2)), 10), InputError);
}

TEST(FloorPower, Examples) {
  // floors 1,2,5,8,11; gcd(2,2) = 2 and gcd(4,8) = 4
  auto tiny = floor_power_density(mpq_class(3, 2), 5);
  EXPECT_EQ(tiny.count, 3);
  EXPECT_EQ(tiny.frequency, mpq_class(3, 5));
  EXPECT_LT(floor_power_density(mpq_class(3, 2), 10000).deviation, 0.02);
  EXPECT_LT(floor_power_density(mpq_class(5, 2), 1000).deviation, 0.05);
  EXPECT_THROW(floor_power_density(mpq_class(2), 10), InputError);
  EXPECT_THROW(floor_power_density(mpq_class(1, 2), 10), InputError);
}

TEST(Multi, Examples) {
  auto single = multi_gcd_density({parse_function("x^(3/2)")}, 10000);
  EXPECT_EQ(single.zeta_s, 2);
  EXPECT_EQ(single.count, floor_power_density(mpq_class(3, 2), 10000).count);
  auto pair = multi_gcd_density({parse_function("x^(3/2)"), parse_function("x^(7/4)")}, 10000);
  EXPECT_EQ(pair.zeta_s, 3);
  EXPECT_LT(pair.deviation, 0.02);
  auto triple = multi_gcd_density(
      {parse_function("x^(3/2)"), parse_function("x^(7/4)"), parse_function("x^(9/5)")}, 1000);
  EXPECT_LT(triple.deviation, 0.05);
  EXPECT_THROW(multi_gcd_density({parse_function("1/x")}, 10), InputError);
}

TEST(Density, ShardedCountsAgree) {
  CountOptions four;
  four.jobs = 4;
  EXPECT_EQ(beatty_coprime_density(Surd::make(1, 2), 5000, four).count,
            beatty_coprime_density(Surd::make(1, 2), 5000).count);
}

TEST(Density, Table) {
  ExperimentSpec spec;
  spec.name = "floor-power";
  spec.c = mpq_class(3, 2);
  auto rows = density_table(spec, {100, 1000, 10000});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[2].N, 10000u);
  spec.name = "nope";
  EXPECT_THROW(density_table(spec, {10}), InputError);
}

}  // namespace
}  // namespace kwc
