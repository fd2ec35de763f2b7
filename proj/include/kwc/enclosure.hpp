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
#include <mpfr.h>

#include <optional>
#include <string>

namespace kwc {

// Owning handle for an mpfr_t.
class Real {
 public:
  explicit Real(long precision_bits = 64);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }

  // Exact conversion of the (finite) binary value.
  mpq_class to_rational() const;

 private:
  mpfr_t value_;
};

// Closed interval [lo, hi] guaranteed to contain a real quantity. Every
// operation rounds lo down and hi up. When the quantity is known to be a
// specific rational, that value is carried alongside so floors and
// comparisons can be decided without rounding.
class Enclosure {
 public:
  Enclosure();  // the exact value 0

  static Enclosure exact(const mpq_class& value, long precision_bits = 64);
  // Requires lo <= hi.
  static Enclosure between(Real lo, Real hi);

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  long precision_bits() const { return bits_; }

  bool is_exact() const { return exact_.has_value(); }
  const std::optional<mpq_class>& exact_value() const { return exact_; }

  bool contains(const mpq_class& q) const;
  bool contains(const Enclosure& inner) const;

  // Sign of (value - q) when provable, nullopt otherwise.
  std::optional<int> compare(const mpq_class& q) const;

  // floor(value) when lo and hi share an integer part (or the value is an
  // exact rational), nullopt when the interval straddles an integer.
  std::optional<mpz_class> common_floor() const;

  Real width() const;  // rounded up
  mpq_class midpoint() const;

  Enclosure abs() const;
  Enclosure operator-() const;
  Enclosure plus(const mpq_class& q) const;
  Enclosure times(const mpq_class& q) const;

  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);

  double lo_double() const;  // rounded down
  double hi_double() const;  // rounded up

  // Decimal strings rounded outward; `digits` == 0 picks enough digits to
  // represent the working precision.
  std::string lo_string(int digits = 0) const;
  std::string hi_string(int digits = 0) const;

 private:
  Real lo_;
  Real hi_;
  long bits_ = 64;
  std::optional<mpq_class> exact_;
};

// Decimal rendering of an mpfr value, rounded in direction `rnd`.
std::string real_to_string(const Real& value, int digits, mpfr_rnd_t rnd);

}  // namespace kwc
