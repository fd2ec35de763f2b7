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
#include "kwc/powersum.hpp"

namespace kwc {
namespace {

Term term(const mpq_class& c, const mpq_class& e) { return Term{Surd(c), e}; }

TEST(Parse, DecimalExponent) {
  auto f = parse_function("x^1.5");
  ASSERT_EQ(f.terms().size(), 1u);
  EXPECT_EQ(f.terms()[0], term(1, mpq_class(3, 2)));
}

TEST(Parse, SumWithReciprocal) {
  auto f = parse_function("x^2 + 1/x");
  std::vector<Term> want{term(1, 2), term(1, -1)};
  EXPECT_EQ(f.terms(), want);
}

TEST(Parse, LikeTermsMerge) {
  auto f = parse_function("2*x^2 - x^2");
  std::vector<Term> want{term(1, 2)};
  EXPECT_EQ(f.terms(), want);
  EXPECT_TRUE(parse_function("x - x").is_zero());
}

TEST(Parse, SurdCoefficients) {
  auto f = parse_function("sqrt(2)*x");
  ASSERT_EQ(f.terms().size(), 1u);
  EXPECT_EQ(f.terms()[0].coefficient.radicand(), 2);
  EXPECT_EQ(f.terms()[0].coefficient.rational(), 1);
  // sqrt(8) = 2 sqrt(2); sqrt(1/2) = (1/2) sqrt(2)
  auto g = parse_function("sqrt(8)*x + sqrt(0.5)*x");
  ASSERT_EQ(g.terms().size(), 1u);
  EXPECT_EQ(g.terms()[0].coefficient.rational(), mpq_class(5, 2));
  EXPECT_EQ(g.terms()[0].coefficient.radicand(), 2);
  EXPECT_EQ(parse_function("sqrt(9)").terms()[0].coefficient, Surd(3));
}

TEST(Parse, AssortedForms) {
  EXPECT_EQ(parse_function("3/x^2").terms()[0], term(3, -2));
  EXPECT_EQ(parse_function("x^(-1/2)").terms()[0], term(1, mpq_class(-1, 2)));
  EXPECT_EQ(parse_function("-x").terms()[0], term(-1, 1));
  EXPECT_EQ(parse_function("2^3*x").terms()[0], term(8, 1));
  EXPECT_EQ(parse_function("x/2^20").terms()[0], term(mpq_class(1, 1 << 20), 1));
  EXPECT_EQ(parse_function("x*x^(1/2)").terms()[0], term(1, mpq_class(3, 2)));
  EXPECT_EQ(parse_function(" 7 ").terms()[0], term(7, 0));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_function(""), ParseError);
  EXPECT_THROW(parse_function("x^"), ParseError);
  EXPECT_THROW(parse_function("x^(1/0)"), ParseError);
  EXPECT_THROW(parse_function("sqrt(-2)*x"), ParseError);
  EXPECT_THROW(parse_function("x + y"), ParseError);
  EXPECT_THROW(parse_function("2^(1/2)"), ParseError);
  EXPECT_THROW(parse_function("1/0"), ParseError);
  EXPECT_THROW(parse_function("sqrt(2)*x + sqrt(3)*x"), InputError);
  try {
    parse_function("x + $");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Print, CanonicalForm) {
  EXPECT_EQ(parse_function("x^2 + 1/x").to_string(), "x^2 + x^(-1)");
  EXPECT_EQ(parse_function("-3/2*x^1.5 - 4").to_string(), "-3/2*x^(3/2) - 4");
  EXPECT_EQ(parse_function("sqrt(2)*x").to_string(), "sqrt(2)*x");
  EXPECT_EQ(PowerSumExpr().to_string(), "0");
}

TEST(Differentiate, PowerRule) {
  auto d = differentiate(parse_function("x^(3/2)"), 1);
  std::vector<Term> want{term(mpq_class(3, 2), mpq_class(1, 2))};
  EXPECT_EQ(d.terms(), want);
}

TEST(Differentiate, AnnihilatesLowDegree) {
  auto d = differentiate(parse_function("x^2 + 1/x"), 3);
  std::vector<Term> want{term(-6, -4)};
  EXPECT_EQ(d.terms(), want);
}

TEST(Differentiate, OrderZeroIsIdentity) {
  auto f = parse_function("sqrt(3)*x^(7/4) - x + 5");
  EXPECT_EQ(differentiate(f, 0), f);
}

TEST(Hypotheses, Examples) {
  auto a = check_hypotheses(parse_function("x^(3/2)"), 2);
  EXPECT_TRUE(a.vanishing_kth);
  EXPECT_TRUE(a.unbounded_k_minus_1);
  auto b = check_hypotheses(parse_function("x^2 + 1/x"), 3);
  EXPECT_TRUE(b.vanishing_kth);
  EXPECT_FALSE(b.unbounded_k_minus_1);
  auto c = check_hypotheses(parse_function("x^3"), 2);
  EXPECT_FALSE(c.vanishing_kth);
  EXPECT_TRUE(c.unbounded_k_minus_1);
  EXPECT_THROW(check_hypotheses(parse_function("x"), 1), InputError);
}

TEST(Hypotheses, NegativeLeadingTermIsBounded) {
  auto r = check_hypotheses(parse_function("-x^(3/2)"), 2);
  EXPECT_TRUE(r.vanishing_kth);
  EXPECT_FALSE(r.unbounded_k_minus_1);
  // The smaller positive term does not rescue a negative leading term.
  auto s = check_hypotheses(parse_function("-x^(19/10) + x^(3/2)"), 2);
  EXPECT_FALSE(s.unbounded_k_minus_1);
}

PowerSumExpr random_expr(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 4), num(-9, 9), den(1, 6),
      rad(1, 3);
  std::vector<Term> terms;
  const int n = count(rng);
  const int radicand = rad(rng);
  for (int i = 0; i < n; ++i) {
    mpq_class c(num(rng), den(rng));
    c.canonicalize();
    mpq_class e(num(rng), den(rng));
    e.canonicalize();
    terms.push_back(Term{Surd::make(c, radicand), e});
  }
  return PowerSumExpr::from_terms(terms);
}

TEST(Property, PrintParseRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto f = random_expr(rng);
    EXPECT_EQ(parse_function(f.to_string()), f) << f.to_string();
  }
}

TEST(Property, NormalizedInvariants) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    auto f = random_expr(rng);
    for (size_t j = 0; j < f.terms().size(); ++j) {
      EXPECT_FALSE(f.terms()[j].coefficient.is_zero());
      if (j > 0) EXPECT_GT(f.terms()[j - 1].exponent, f.terms()[j].exponent);
    }
  }
}

TEST(Property, DifferentiationComposesAndIsLinear) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    auto f = random_expr(rng);
    auto g = random_expr(rng);
    const int a = static_cast<int>(rng() % 4), b = static_cast<int>(rng() % 4);
    EXPECT_EQ(differentiate(f, a + b), differentiate(differentiate(f, a), b));
    if (!f.is_zero() && !g.is_zero() &&
        f.terms()[0].coefficient.radicand() == g.terms()[0].coefficient.radicand()) {
      EXPECT_EQ(differentiate(f + g, a), differentiate(f, a) + differentiate(g, a));
    }
  }
}

TEST(Property, VanishingMatchesExponents) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 300; ++i) {
    auto f = random_expr(rng);
    if (f.is_zero()) continue;
    const int k = 2 + static_cast<int>(rng() % 3);
    bool all_below = true;
    for (const auto& t : f.terms()) all_below = all_below && t.exponent < k;
    EXPECT_EQ(check_hypotheses(f, k).vanishing_kth, all_below);
  }
}

}  // namespace
}  // namespace kwc
