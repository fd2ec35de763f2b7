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

#include <functional>

#include "kwc/enclosure.hpp"
#include "kwc/powersum.hpp"

namespace kwc {

struct EvalConfig {
  long initial_bits = 64;
  long precision_cap = 1L << 20;
};

// One pass at a fixed working precision. Containment always holds; the width
// is whatever `working_bits` buys. Exponents whose root is exact at x (and
// all integer exponents with rational coefficients) yield exact enclosures.
Enclosure evaluate(const PowerSumExpr& f, const mpz_class& x, long working_bits);

// Enclosure of f(x) with width <= 2^-precision_bits * max(1, |f(x)|).
// Throws PrecisionCapExceeded when the request (or the refinement it needs)
// exceeds cfg.precision_cap, InputError when x < 1.
Enclosure eval_enclosure(const PowerSumExpr& f, const mpz_class& x,
                         long precision_bits, const EvalConfig& cfg = {});

struct FloorFrac {
  mpz_class floor_part;
  Enclosure frac;  // 0 <= frac.lo, frac.hi < 1
  bool exact = false;
  long precision_bits = 0;
};

// floor and fractional part of f^(order)(x). Precision doubles from
// cfg.initial_bits; throws Undecidable if the enclosure still straddles an
// integer at cfg.precision_cap.
FloorFrac floor_frac(const PowerSumExpr& f, const mpz_class& x, int order,
                     const EvalConfig& cfg = {});

// Same, for a quantity supplied as a precision -> enclosure callback.
FloorFrac floor_frac(const std::function<Enclosure(long)>& eval,
                     const EvalConfig& cfg = {});

// Sign of (value - t), escalating precision until decided. An exact value
// equal to t returns 0; an inexact one that cannot be separated from t by
// the cap throws Undecidable.
int compare_value(const std::function<Enclosure(long)>& eval,
                  const mpq_class& t, const EvalConfig& cfg = {});
// As above; *deciding receives the enclosure that settled the comparison.
int compare_value(const std::function<Enclosure(long)>& eval,
                  const mpq_class& t, const EvalConfig& cfg, Enclosure* deciding);
int compare_value(const PowerSumExpr& f, const mpz_class& x,
                  const mpq_class& t, const EvalConfig& cfg = {});

struct RemainderBound {
  mpz_class a;
  mpz_class b;
  int order = 0;
  Enclosure sup_abs;  // sup_abs.hi >= |f^(order)(x)| on [a, b]
};

// Encloses sum_j max_{[a,b]} |c_j e_j^(k) x^(e_j - k)|, each term monotone on
// [a, b], which dominates sup |f^(k)| by the triangle inequality.
Enclosure sup_abs_derivative(const PowerSumExpr& f, int k, const mpz_class& a,
                             const mpz_class& b, long bits = 128);
RemainderBound remainder_bound(const PowerSumExpr& f, int k, const mpz_class& a,
                               const mpz_class& b, long bits = 128);

struct TaylorCheck {
  bool holds = false;
  Enclosure residual;  // f(n+h) - sum_{i<k} h^i/i! f^(i)(n)
  Enclosure bound;     // h^k/k! * sup |f^(k)| on [n, n+h]
};

TaylorCheck taylor_residual_check(const PowerSumExpr& f, const mpz_class& n,
                                  const mpz_class& h, int k,
                                  const EvalConfig& cfg = {});

}  // namespace kwc
