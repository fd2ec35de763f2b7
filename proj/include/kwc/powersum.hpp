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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kwc {

// Exact scalar r * sqrt(d) with r rational and d a squarefree positive
// integer (d == 1 for plain rationals). Zero is always stored as 0 * sqrt(1).
class Surd {
 public:
  Surd() : rational_(0), radicand_(1) {}
  explicit Surd(mpq_class rational);

  // r * sqrt(q) for any rational q >= 0. Throws InputError for q < 0.
  static Surd make(mpq_class rational, const mpq_class& radicand);

  const mpq_class& rational() const { return rational_; }
  const mpz_class& radicand() const { return radicand_; }

  bool is_zero() const { return sgn(rational_) == 0; }
  bool is_rational() const { return radicand_ == 1; }
  int sign() const { return sgn(rational_); }

  // r^2 * d, exact.
  mpq_class square() const { return rational_ * rational_ * radicand_; }

  Surd abs() const;
  Surd operator-() const;
  Surd operator*(const Surd& other) const;
  Surd operator*(const mpq_class& factor) const;

  friend bool operator==(const Surd& a, const Surd& b) {
    return a.rational_ == b.rational_ && a.radicand_ == b.radicand_;
  }

  // "3/2*sqrt(2)", "-6", "sqrt(3)".
  std::string to_string() const;

 private:
  void normalize();

  mpq_class rational_;
  mpz_class radicand_;
};

struct Term {
  Surd coefficient;
  mpq_class exponent;

  friend bool operator==(const Term& a, const Term& b) {
    return a.coefficient == b.coefficient && a.exponent == b.exponent;
  }
};

// f(x) = sum_j c_j * x^(e_j) on x >= 1. Terms are kept with strictly
// decreasing exponents and nonzero coefficients.
class PowerSumExpr {
 public:
  PowerSumExpr() = default;

  // Merges like exponents, drops zeros, sorts. Two coefficients with
  // different radicands at the same exponent cannot be merged into one surd
  // and raise InputError.
  static PowerSumExpr from_terms(std::vector<Term> terms);
  static PowerSumExpr constant(const mpq_class& value);
  static PowerSumExpr monomial(const Surd& coefficient,
                               const mpq_class& exponent);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Leading term (largest exponent); nullopt for the zero function.
  std::optional<Term> dominant() const;

  PowerSumExpr operator+(const PowerSumExpr& other) const;
  PowerSumExpr operator-() const;
  PowerSumExpr plus_constant(const mpq_class& value) const;

  // Canonical form: terms "c*x^(p/q)" joined by " + " / " - ".
  std::string to_string() const;

  friend bool operator==(const PowerSumExpr& a, const PowerSumExpr& b) {
    return a.terms_ == b.terms_;
  }

 private:
  std::vector<Term> terms_;
};

struct HypothesisReport {
  int k = 0;
  bool vanishing_kth = false;
  bool unbounded_k_minus_1 = false;
  std::optional<mpq_class> witness_exponent;

  bool satisfied() const { return vanishing_kth && unbounded_k_minus_1; }
};

// Grammar (whitespace ignored):
//   expr     = [sign] term { sign term }
//   term     = factor { ("*" | "/") factor }
//   factor   = number [ "^" exponent ] | "sqrt" "(" [sign] number ")"
//            | "x" [ "^" exponent ]
//   exponent = [sign] number | "(" [sign] number [ "/" number ] ")"
//   number   = digits [ "." digits ] | "." digits
// Powers of a numeric literal must be integers. Throws ParseError.
PowerSumExpr parse_function(std::string_view text);

PowerSumExpr differentiate(const PowerSumExpr& f, int order);

// Decides lim f^(k) = 0 and limsup f^(k-1) = +inf exactly on the power-sum
// class. Throws InputError for k < 2.
HypothesisReport check_hypotheses(const PowerSumExpr& f, int k);

// e * (e-1) * ... * (e-order+1); 1 for order 0.
mpq_class falling_factorial(const mpq_class& e, int order);

}  // namespace kwc
