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

#include "kwc/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "kwc/errors.hpp"

namespace kwc {

Real::Real(long precision_bits) {
  mpfr_init2(value_, std::max<long>(precision_bits, MPFR_PREC_MIN));
  mpfr_set_zero(value_, 1);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

mpq_class Real::to_rational() const {
  mpq_class out;
  mpfr_get_q(out.get_mpq_t(), value_);
  return out;
}

std::string real_to_string(const Real& value, int digits, mpfr_rnd_t rnd) {
  if (mpfr_zero_p(value.get())) return "0";
  if (digits <= 0) {
    digits = static_cast<int>(
                 std::ceil(static_cast<double>(value.precision()) * 0.30103)) +
             2;
  }
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits),
                           value.get(), rnd);
  std::string mantissa(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mantissa.empty() && mantissa[0] == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  // Use plain positional notation while it stays readable.
  if (exp10 > 0 && exp10 <= static_cast<mpfr_exp_t>(mantissa.size())) {
    std::string out = mantissa.substr(0, static_cast<size_t>(exp10));
    std::string frac = mantissa.substr(static_cast<size_t>(exp10));
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    return sign + out + (frac.empty() ? "" : "." + frac);
  }
  if (exp10 <= 0 && exp10 > -20) {
    std::string frac(static_cast<size_t>(-exp10), '0');
    frac += mantissa;
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    return sign + "0." + frac;
  }
  std::string frac = mantissa.substr(1);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  return sign + mantissa.substr(0, 1) + (frac.empty() ? "" : "." + frac) +
         "e" + std::to_string(exp10 - 1);
}

namespace {

// Exponent of the larger endpoint magnitude, if either endpoint is nonzero.
std::optional<long> top_exponent(const Real& lo, const Real& hi) {
  std::optional<long> out;
  for (const Real* r : {&lo, &hi}) {
    if (mpfr_regular_p(r->get()) != 0) {
      const long e = static_cast<long>(mpfr_get_exp(r->get()));
      out = out ? std::max(*out, e) : e;
    }
  }
  return out;
}

long rational_exponent(const mpq_class& q) {
  if (sgn(q) == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) + 1;
}

}  // namespace

Enclosure::Enclosure() : exact_(mpq_class(0)) {}

Enclosure Enclosure::exact(const mpq_class& value, long precision_bits) {
  Enclosure out;
  out.bits_ = precision_bits;
  const long needed =
      static_cast<long>(mpz_sizeinbase(value.get_num_mpz_t(), 2)) + 2;
  out.lo_ = Real(std::max(precision_bits, needed));
  out.hi_ = Real(std::max(precision_bits, needed));
  mpfr_set_q(out.lo_.get(), value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_.get(), value.get_mpq_t(), MPFR_RNDU);
  out.exact_ = value;
  return out;
}

Enclosure Enclosure::between(Real lo, Real hi) {
  if (mpfr_cmp(lo.get(), hi.get()) > 0) {
    throw InternalContradiction("enclosure with lo > hi");
  }
  Enclosure out;
  out.bits_ = std::max(lo.precision(), hi.precision());
  out.lo_ = std::move(lo);
  out.hi_ = std::move(hi);
  out.exact_.reset();
  return out;
}

bool Enclosure::contains(const mpq_class& q) const {
  if (exact_) return *exact_ == q;
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool Enclosure::contains(const Enclosure& inner) const {
  if (exact_ && inner.exact_) return *exact_ == *inner.exact_;
  if (inner.exact_) return contains(*inner.exact_);
  return mpfr_cmp(lo_.get(), inner.lo_.get()) <= 0 &&
         mpfr_cmp(hi_.get(), inner.hi_.get()) >= 0;
}

std::optional<int> Enclosure::compare(const mpq_class& q) const {
  if (exact_) return cmp(*exact_, q) < 0 ? -1 : (cmp(*exact_, q) > 0 ? 1 : 0);
  if (mpfr_cmp_q(hi_.get(), q.get_mpq_t()) < 0) return -1;
  if (mpfr_cmp_q(lo_.get(), q.get_mpq_t()) > 0) return 1;
  if (mpfr_equal_p(lo_.get(), hi_.get()) != 0) return 0;
  return std::nullopt;
}

std::optional<mpz_class> Enclosure::common_floor() const {
  if (exact_) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), exact_->get_num_mpz_t(),
               exact_->get_den_mpz_t());
    return f;
  }
  mpz_class flo, fhi;
  mpfr_get_z(flo.get_mpz_t(), lo_.get(), MPFR_RNDD);
  mpfr_get_z(fhi.get_mpz_t(), hi_.get(), MPFR_RNDD);
  if (flo != fhi) return std::nullopt;
  return flo;
}

Real Enclosure::width() const {
  Real w(bits_);
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

mpq_class Enclosure::midpoint() const {
  if (exact_) return *exact_;
  mpq_class m = (lo_.to_rational() + hi_.to_rational()) / 2;
  m.canonicalize();
  return m;
}

Enclosure Enclosure::abs() const {
  if (exact_) return exact(::abs(*exact_), bits_);
  if (mpfr_sgn(lo_.get()) >= 0) return *this;
  if (mpfr_sgn(hi_.get()) <= 0) return -*this;
  Real lo(bits_);
  Real hi(bits_);
  mpfr_set_zero(lo.get(), 1);
  mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
  if (mpfr_cmp(hi.get(), hi_.get()) < 0) mpfr_set(hi.get(), hi_.get(), MPFR_RNDU);
  return between(std::move(lo), std::move(hi));
}

Enclosure Enclosure::operator-() const {
  if (exact_) return exact(-*exact_, bits_);
  Real lo(bits_);
  Real hi(bits_);
  mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
  return between(std::move(lo), std::move(hi));
}

Enclosure Enclosure::plus(const mpq_class& q) const {
  if (exact_) return exact(*exact_ + q, bits_);
  // Keep the absolute resolution of this enclosure even when q is larger.
  long bits = bits_;
  if (auto e = top_exponent(lo_, hi_)) {
    bits = std::max(bits, rational_exponent(q) - *e + bits_ + 2);
  } else {
    bits = std::max(bits, rational_exponent(q) + bits_ + 2);
  }
  Real lo(bits);
  Real hi(bits);
  mpfr_add_q(lo.get(), lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_add_q(hi.get(), hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return between(std::move(lo), std::move(hi));
}

Enclosure Enclosure::times(const mpq_class& q) const {
  if (exact_) return exact(*exact_ * q, bits_);
  Real lo(bits_);
  Real hi(bits_);
  if (sgn(q) >= 0) {
    mpfr_mul_q(lo.get(), lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(hi.get(), hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_mul_q(lo.get(), hi_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(hi.get(), lo_.get(), q.get_mpq_t(), MPFR_RNDU);
  }
  return between(std::move(lo), std::move(hi));
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  const long bits = std::max(a.bits_, b.bits_);
  if (a.exact_ && b.exact_) return Enclosure::exact(*a.exact_ + *b.exact_, bits);
  if (b.exact_) return a.plus(*b.exact_);
  if (a.exact_) return b.plus(*a.exact_);
  // Result resolution: the finer of the two operand resolutions.
  long sum_bits = bits;
  auto ea = top_exponent(a.lo_, a.hi_);
  auto eb = top_exponent(b.lo_, b.hi_);
  if (ea && eb) {
    const long ulp = std::min(*ea - a.bits_, *eb - b.bits_);
    sum_bits = std::max(bits, std::max(*ea, *eb) + 1 - ulp + 2);
  }
  Real lo(sum_bits);
  Real hi(sum_bits);
  mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return Enclosure::between(std::move(lo), std::move(hi));
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) { return a + (-b); }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  const long bits = std::max(a.bits_, b.bits_);
  if (a.exact_ && b.exact_) return Enclosure::exact(*a.exact_ * *b.exact_, bits);
  if (b.exact_) return a.times(*b.exact_);
  if (a.exact_) return b.times(*a.exact_);
  const mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
  const mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
  Real lo(bits);
  Real hi(bits);
  Real tmp(bits);
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(tmp.get(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(tmp.get(), lo.get()) < 0) mpfr_set(lo.get(), tmp.get(), MPFR_RNDD);
      mpfr_mul(tmp.get(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(tmp.get(), hi.get()) > 0) mpfr_set(hi.get(), tmp.get(), MPFR_RNDU);
      first = false;
    }
  }
  return Enclosure::between(std::move(lo), std::move(hi));
}

double Enclosure::lo_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
double Enclosure::hi_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }

std::string Enclosure::lo_string(int digits) const {
  return real_to_string(lo_, digits, MPFR_RNDD);
}
std::string Enclosure::hi_string(int digits) const {
  return real_to_string(hi_, digits, MPFR_RNDU);
}

}  // namespace kwc
