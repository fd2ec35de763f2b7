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

#include "kwc/powersum.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <utility>

#include "kwc/errors.hpp"

namespace kwc {
namespace {

// Splits n > 0 as s^2 * d. d is squarefree whenever every square factor of n
// has a prime below the trial bound or is a perfect square cofactor; the
// representation is exact either way.
std::pair<mpz_class, mpz_class> split_square(mpz_class n) {
  mpz_class s = 1;
  mpz_class d = 1;
  for (unsigned long p = 2; p < 100000; p += (p == 2 ? 1 : 2)) {
    if (n == 1) break;
    const mpz_class pp = mpz_class(p) * p;
    if (pp > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        s *= p;
      } else {
        d *= p;
      }
    }
  }
  if (n > 1) {
    if (mpz_perfect_square_p(n.get_mpz_t()) != 0) {
      mpz_class r;
      mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
      s *= r;
    } else {
      d *= n;
    }
  }
  return {s, d};
}

std::string rational_to_string(const mpq_class& q) {
  return q.get_str();
}

}  // namespace

Surd::Surd(mpq_class rational) : rational_(std::move(rational)), radicand_(1) {
  rational_.canonicalize();
}

Surd Surd::make(mpq_class rational, const mpq_class& radicand) {
  if (sgn(radicand) < 0) {
    throw InputError("negative argument to sqrt");
  }
  Surd out;
  if (sgn(radicand) == 0 || sgn(rational) == 0) return out;
  // sqrt(a/b) = sqrt(a*b) / b
  const mpz_class ab = radicand.get_num() * radicand.get_den();
  auto [s, d] = split_square(ab);
  out.rational_ = rational * mpq_class(s, radicand.get_den());
  out.rational_.canonicalize();
  out.radicand_ = d;
  return out;
}

void Surd::normalize() {
  rational_.canonicalize();
  if (sgn(rational_) == 0) radicand_ = 1;
}

Surd Surd::abs() const {
  Surd out = *this;
  out.rational_ = ::abs(rational_);
  return out;
}

Surd Surd::operator-() const {
  Surd out = *this;
  out.rational_ = -rational_;
  return out;
}

Surd Surd::operator*(const Surd& other) const {
  Surd out;
  out.rational_ = rational_ * other.rational_;
  // Both radicands are squarefree: d1*d2 = g^2 * (d1/g)*(d2/g).
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), radicand_.get_mpz_t(), other.radicand_.get_mpz_t());
  out.rational_ *= g;
  out.radicand_ = (radicand_ / g) * (other.radicand_ / g);
  out.normalize();
  return out;
}

Surd Surd::operator*(const mpq_class& factor) const {
  Surd out = *this;
  out.rational_ *= factor;
  out.normalize();
  return out;
}

std::string Surd::to_string() const {
  if (radicand_ == 1) return rational_to_string(rational_);
  std::string root = "sqrt(" + radicand_.get_str() + ")";
  if (rational_ == 1) return root;
  if (rational_ == -1) return "-" + root;
  return rational_to_string(rational_) + "*" + root;
}

PowerSumExpr PowerSumExpr::from_terms(std::vector<Term> terms) {
  std::map<mpq_class, Surd> merged;
  for (auto& t : terms) {
    t.exponent.canonicalize();
    if (t.coefficient.is_zero()) continue;
    auto it = merged.find(t.exponent);
    if (it == merged.end()) {
      merged.emplace(t.exponent, t.coefficient);
      continue;
    }
    Surd& acc = it->second;
    if (acc.radicand() != t.coefficient.radicand()) {
      throw InputError("cannot merge coefficients " + acc.to_string() +
                       " and " + t.coefficient.to_string() +
                       " at exponent " + t.exponent.get_str());
    }
    acc = Surd::make(acc.rational() + t.coefficient.rational(),
                     mpq_class(acc.radicand()));
  }
  PowerSumExpr out;
  for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
    if (!it->second.is_zero()) out.terms_.push_back({it->second, it->first});
  }
  return out;
}

PowerSumExpr PowerSumExpr::constant(const mpq_class& value) {
  return from_terms({Term{Surd(value), mpq_class(0)}});
}

PowerSumExpr PowerSumExpr::monomial(const Surd& coefficient,
                                    const mpq_class& exponent) {
  return from_terms({Term{coefficient, exponent}});
}

std::optional<Term> PowerSumExpr::dominant() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front();
}

PowerSumExpr PowerSumExpr::operator+(const PowerSumExpr& other) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return from_terms(std::move(all));
}

PowerSumExpr PowerSumExpr::operator-() const {
  PowerSumExpr out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

PowerSumExpr PowerSumExpr::plus_constant(const mpq_class& value) const {
  return *this + constant(value);
}

std::string PowerSumExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    Surd c = t.coefficient;
    if (first) {
      if (c.sign() < 0) {
        out << "-";
        c = -c;
      }
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
      c = c.abs();
    }
    first = false;

    std::string power;
    if (t.exponent == 1) {
      power = "x";
    } else if (t.exponent != 0) {
      if (t.exponent.get_den() == 1 && sgn(t.exponent) > 0) {
        power = "x^" + t.exponent.get_str();
      } else {
        power = "x^(" + t.exponent.get_str() + ")";
      }
    }
    if (power.empty()) {
      out << c.to_string();
    } else if (c.is_rational() && c.rational() == 1) {
      out << power;
    } else {
      out << c.to_string() << "*" << power;
    }
  }
  return out.str();
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  PowerSumExpr parse() {
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) fail("empty expression");
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = (get() == '-') ? -1 : 1;
    }
    terms.push_back(term(sign));
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') fail(std::string("unexpected '") + c + "'");
      get();
      terms.push_back(term(c == '-' ? -1 : 1));
    }
    return PowerSumExpr::from_terms(std::move(terms));
  }

 private:
  Term term(int sign) {
    Surd coefficient{mpq_class(sign)};
    mpq_class exponent = 0;
    factor(coefficient, exponent, false);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char c = peek();
      if (c != '*' && c != '/') break;
      get();
      factor(coefficient, exponent, c == '/');
    }
    return Term{coefficient, exponent};
  }

  void factor(Surd& coefficient, mpq_class& exponent, bool divide) {
    skip_ws();
    if (at_end()) fail("expected a factor");
    const std::size_t start = pos_;
    if (peek() == 'x') {
      get();
      mpq_class e = 1;
      skip_ws();
      if (!at_end() && peek() == '^') {
        get();
        e = exponent_literal();
      }
      exponent += divide ? mpq_class(-e) : e;
      return;
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      expect('(');
      skip_ws();
      int sign = 1;
      if (!at_end() && (peek() == '-' || peek() == '+')) {
        sign = (get() == '-') ? -1 : 1;
      }
      const mpq_class q = number() * sign;
      expect(')');
      if (sgn(q) < 0) {
        throw ParseError("negative argument to sqrt", start);
      }
      if (sgn(q) == 0) {
        if (divide) throw ParseError("division by zero", start);
        coefficient = Surd();
        return;
      }
      // 1/sqrt(q) = sqrt(q)/q
      Surd root = Surd::make(mpq_class(1), q);
      if (divide) root = root * mpq_class(1 / q);
      coefficient = coefficient * root;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      mpq_class value = number();
      skip_ws();
      if (!at_end() && peek() == '^') {
        const std::size_t caret = pos_;
        get();
        const mpq_class e = exponent_literal();
        if (e.get_den() != 1) {
          throw ParseError("non-integer power of a constant", caret);
        }
        value = rational_power(value, e, caret);
      }
      if (divide) {
        if (sgn(value) == 0) throw ParseError("division by zero", start);
        value = 1 / value;
      }
      coefficient = coefficient * value;
      return;
    }
    fail(std::string("unexpected '") + peek() + "'");
  }

  mpq_class rational_power(const mpq_class& base, const mpq_class& e,
                           std::size_t where) {
    const mpz_class n = e.get_num();
    if (!n.fits_slong_p() || abs(n) > 4096) {
      throw ParseError("exponent too large", where);
    }
    const long p = n.get_si();
    if (p < 0 && sgn(base) == 0) throw ParseError("division by zero", where);
    mpz_class num, den;
    const unsigned long up = static_cast<unsigned long>(p < 0 ? -p : p);
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), up);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), up);
    mpq_class out = p < 0 ? mpq_class(den, num) : mpq_class(num, den);
    out.canonicalize();
    return out;
  }

  mpq_class exponent_literal() {
    skip_ws();
    if (at_end()) fail("expected an exponent");
    if (peek() == '(') {
      get();
      skip_ws();
      int sign = 1;
      if (!at_end() && (peek() == '-' || peek() == '+')) {
        sign = (get() == '-') ? -1 : 1;
      }
      mpq_class e = number() * sign;
      skip_ws();
      if (!at_end() && peek() == '/') {
        const std::size_t slash = pos_;
        get();
        const mpq_class d = number();
        if (sgn(d) == 0) {
          throw ParseError("zero denominator in exponent", slash);
        }
        e /= d;
      }
      expect(')');
      e.canonicalize();
      return e;
    }
    int sign = 1;
    if (peek() == '-' || peek() == '+') sign = (get() == '-') ? -1 : 1;
    return number() * sign;
  }

  mpq_class number() {
    skip_ws();
    const std::size_t start = pos_;
    std::string digits;
    std::size_t fraction_digits = 0;
    bool seen_point = false;
    while (!at_end()) {
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
        if (seen_point) ++fraction_digits;
        get();
      } else if (c == '.' && !seen_point) {
        seen_point = true;
        get();
      } else {
        break;
      }
    }
    if (digits.empty()) {
      pos_ = start;
      fail("expected a number");
    }
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, fraction_digits);
    mpq_class out(num, den);
    out.canonicalize();
    return out;
  }

  void expect(char c) {
    skip_ws();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
      ++pos_;
    }
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() { return text_[pos_++]; }
  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(message, pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PowerSumExpr parse_function(std::string_view text) {
  return Parser(text).parse();
}

mpq_class falling_factorial(const mpq_class& e, int order) {
  mpq_class out = 1;
  for (int j = 0; j < order; ++j) out *= (e - j);
  return out;
}

PowerSumExpr differentiate(const PowerSumExpr& f, int order) {
  if (order < 0) throw InputError("derivative order must be non-negative");
  if (order == 0) return f;
  std::vector<Term> out;
  out.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    const mpq_class factor = falling_factorial(t.exponent, order);
    if (sgn(factor) == 0) continue;
    out.push_back(Term{t.coefficient * factor, t.exponent - order});
  }
  return PowerSumExpr::from_terms(std::move(out));
}

HypothesisReport check_hypotheses(const PowerSumExpr& f, int k) {
  if (k < 2) throw InputError("k must be at least 2");
  HypothesisReport report;
  report.k = k;
  report.vanishing_kth =
      std::all_of(f.terms().begin(), f.terms().end(),
                  [k](const Term& t) { return t.exponent < k; });
  // limsup f^(k-1) = +inf iff the leading term of f^(k-1) grows with a
  // positive coefficient.
  const auto lead = differentiate(f, k - 1).dominant();
  if (lead && sgn(lead->exponent) > 0 && lead->coefficient.sign() > 0) {
    report.unbounded_k_minus_1 = true;
    report.witness_exponent = lead->exponent + (k - 1);
  }
  return report;
}

}  // namespace kwc
