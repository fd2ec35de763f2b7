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

#include "kwc/rigor.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "kwc/errors.hpp"

namespace kwc {
namespace {

long bit_length(const mpz_class& v) {
  return sgn(v) == 0 ? 0 : static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

mpz_class ipow(const mpz_class& base, const mpz_class& exponent) {
  if (!exponent.fits_ulong_p()) throw InputError("exponent too large");
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent.get_ui());
  return out;
}

Real exact_real(const mpz_class& v) {
  Real out(std::max<long>(bit_length(v) + 2, 64));
  mpfr_set_z(out.get(), v.get_mpz_t(), MPFR_RNDN);
  return out;
}

// c * x^(p/q) = r * rho^(1/m) with rho = a/b rational:
//   d == 1: rho = x^p, m = q;   d > 1: rho = d^q x^(2p), m = 2q.
// The root is taken as s = floor((a 2^(mk) / b)^(1/m)), so the true root
// lies in [s, s+1] / 2^k.
Enclosure eval_term(const Term& term, const mpz_class& x, long working_bits) {
  const mpz_class& p = term.exponent.get_num();
  const mpz_class& q = term.exponent.get_den();
  const mpq_class& r = term.coefficient.rational();
  const mpz_class& d = term.coefficient.radicand();
  if (!q.fits_ulong_p() || q > 1 << 20) throw InputError("exponent denominator too large");
  unsigned long m = q.get_ui();
  mpz_class a = 1;
  mpz_class b = 1;
  mpz_class xpow = sgn(p) >= 0 ? p : mpz_class(-p);
  if (d != 1) {
    m *= 2;
    xpow *= 2;
    a = ipow(d, q);
  }
  if (sgn(p) >= 0) {
    a *= ipow(x, xpow);
  } else {
    b = ipow(x, xpow);
  }
  mpz_class ra, rb;
  const bool exact_a = mpz_root(ra.get_mpz_t(), a.get_mpz_t(), m) != 0;
  const bool exact_b = exact_a && mpz_root(rb.get_mpz_t(), b.get_mpz_t(), m) != 0;
  if (exact_a && exact_b) {
    mpq_class v(ra, rb);
    v.canonicalize();
    return Enclosure::exact(r * v, working_bits);
  }
  // Shift so the absolute error 2^-k is small relative to the root itself.
  const long deficit = (bit_length(b) - bit_length(a)) / static_cast<long>(m) + 1;
  const long k = working_bits + std::max<long>(0, deficit) + 2;
  mpz_class scaled = a;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(),
               static_cast<mp_bitcnt_t>(k) * m);
  mpz_fdiv_q(scaled.get_mpz_t(), scaled.get_mpz_t(), b.get_mpz_t());
  mpz_class s;
  mpz_root(s.get_mpz_t(), scaled.get_mpz_t(), m);
  Real lo = exact_real(s);
  Real hi = exact_real(s + 1);
  mpfr_div_2ui(lo.get(), lo.get(), static_cast<unsigned long>(k), MPFR_RNDD);
  mpfr_div_2ui(hi.get(), hi.get(), static_cast<unsigned long>(k), MPFR_RNDU);
  return Enclosure::between(std::move(lo), std::move(hi)).times(r);
}

// Lower bound on |value| (0 if the enclosure contains 0).
Real min_abs(const Enclosure& e) {
  Real out(e.precision_bits());
  if (mpfr_sgn(e.lo().get()) > 0) {
    mpfr_set(out.get(), e.lo().get(), MPFR_RNDD);
  } else if (mpfr_sgn(e.hi().get()) < 0) {
    mpfr_neg(out.get(), e.hi().get(), MPFR_RNDD);
  } else {
    mpfr_set_zero(out.get(), 1);
  }
  return out;
}

// Binary exponent of the larger endpoint magnitude; 0 for tiny values.
long magnitude_bits(const Enclosure& e) {
  long out = 0;
  for (const Real* r : {&e.lo(), &e.hi()}) {
    if (mpfr_regular_p(r->get())) {
      out = std::max<long>(out, static_cast<long>(mpfr_get_exp(r->get())));
    }
  }
  return out;
}

long next_bits(long bits, long magnitude, const EvalConfig& cfg) {
  return std::min(std::max(bits * 2, magnitude + cfg.initial_bits),
                  cfg.precision_cap);
}

void require_positive(const mpz_class& x) {
  if (x < 1) throw InputError("argument must be >= 1, got " + x.get_str());
}

}  // namespace

Enclosure evaluate(const PowerSumExpr& f, const mpz_class& x, long working_bits) {
  require_positive(x);
  Enclosure sum = Enclosure::exact(0, working_bits);
  for (const Term& t : f.terms()) sum = sum + eval_term(t, x, working_bits);
  return sum;
}

Enclosure eval_enclosure(const PowerSumExpr& f, const mpz_class& x,
                         long precision_bits, const EvalConfig& cfg) {
  require_positive(x);
  if (precision_bits < 1) throw InputError("precision must be positive");
  if (precision_bits > cfg.precision_cap) {
    throw PrecisionCapExceeded("requested " + std::to_string(precision_bits) +
                               " bits exceeds cap " +
                               std::to_string(cfg.precision_cap));
  }
  long working = precision_bits + 8;
  for (;;) {
    Enclosure e = evaluate(f, x, working);
    if (e.is_exact()) return e;
    Real w = e.width();
    mpfr_mul_2si(w.get(), w.get(), precision_bits, MPFR_RNDU);
    Real mag = min_abs(e);
    if (mpfr_cmp_ui(mag.get(), 1) < 0) mpfr_set_ui(mag.get(), 1, MPFR_RNDD);
    if (mpfr_cmp(w.get(), mag.get()) <= 0) return e;
    if (working >= cfg.precision_cap) {
      throw PrecisionCapExceeded("enclosure of width 2^-" +
                                 std::to_string(precision_bits) +
                                 " not reached within cap " +
                                 std::to_string(cfg.precision_cap));
    }
    working = std::min(working * 2, std::max(cfg.precision_cap, precision_bits + 8));
  }
}

FloorFrac floor_frac(const std::function<Enclosure(long)>& eval,
                     const EvalConfig& cfg) {
  long bits = std::min(cfg.initial_bits, cfg.precision_cap);
  for (;;) {
    Enclosure e = eval(bits);
    if (auto fl = e.common_floor()) {
      Enclosure frac = e.plus(mpq_class(-*fl));
      if (frac.is_exact() || mpfr_cmp_ui(frac.hi().get(), 1) < 0) {
        return FloorFrac{*fl, std::move(frac), e.is_exact(), bits};
      }
    }
    if (bits >= cfg.precision_cap) {
      throw Undecidable("floor not separated from an integer at " +
                        std::to_string(bits) + " bits");
    }
    bits = next_bits(bits, magnitude_bits(e), cfg);
  }
}

FloorFrac floor_frac(const PowerSumExpr& f, const mpz_class& x, int order,
                     const EvalConfig& cfg) {
  require_positive(x);
  const PowerSumExpr g = differentiate(f, order);
  return floor_frac([&](long bits) { return evaluate(g, x, bits); }, cfg);
}

int compare_value(const std::function<Enclosure(long)>& eval,
                  const mpq_class& t, const EvalConfig& cfg) {
  return compare_value(eval, t, cfg, nullptr);
}

int compare_value(const std::function<Enclosure(long)>& eval,
                  const mpq_class& t, const EvalConfig& cfg, Enclosure* deciding) {
  long bits = std::min(cfg.initial_bits, cfg.precision_cap);
  for (;;) {
    Enclosure e = eval(bits);
    if (auto c = e.compare(t)) {
      if (deciding) *deciding = std::move(e);
      return *c;
    }
    if (bits >= cfg.precision_cap) {
      throw Undecidable("value not separated from " + t.get_str() + " at " +
                        std::to_string(bits) + " bits");
    }
    bits = next_bits(bits, magnitude_bits(e), cfg);
  }
}

int compare_value(const PowerSumExpr& f, const mpz_class& x, const mpq_class& t,
                  const EvalConfig& cfg) {
  require_positive(x);
  return compare_value([&](long bits) { return evaluate(f, x, bits); }, t, cfg);
}

Enclosure sup_abs_derivative(const PowerSumExpr& f, int k, const mpz_class& a,
                             const mpz_class& b, long bits) {
  if (a < 1 || b < a) throw InputError("range must satisfy 1 <= a <= b");
  if (k < 0) throw InputError("derivative order must be >= 0");
  const PowerSumExpr g = differentiate(f, k);
  Enclosure sum = Enclosure::exact(0, bits);
  for (const Term& t : g.terms()) {
    const mpz_class& at = sgn(t.exponent) >= 0 ? b : a;
    sum = sum + eval_term(t, at, bits).abs();
  }
  return sum;
}

RemainderBound remainder_bound(const PowerSumExpr& f, int k, const mpz_class& a,
                               const mpz_class& b, long bits) {
  return RemainderBound{a, b, k, sup_abs_derivative(f, k, a, b, bits)};
}

TaylorCheck taylor_residual_check(const PowerSumExpr& f, const mpz_class& n,
                                  const mpz_class& h, int k,
                                  const EvalConfig& cfg) {
  require_positive(n);
  if (h < 1) throw InputError("h must be >= 1");
  if (k < 1) throw InputError("k must be >= 1");
  // Terms x^e with e a nonnegative integer below k have an identically zero
  // Taylor residual, so they are dropped before any rounding happens.
  std::vector<Term> kept;
  for (const Term& t : f.terms()) {
    const bool polynomial = t.exponent.get_den() == 1 && sgn(t.exponent) >= 0 && t.exponent < k;
    if (!polynomial) kept.push_back(t);
  }
  const PowerSumExpr g = PowerSumExpr::from_terms(kept);
  std::vector<PowerSumExpr> derivs;
  for (int i = 0; i < k; ++i) derivs.push_back(differentiate(g, i));
  std::vector<mpq_class> weights;
  mpq_class w = 1;
  for (int i = 0; i < k; ++i) {
    weights.push_back(w);
    w = w * h / (i + 1);
  }
  // w == h^k / k!
  const mpz_class end = n + h;
  auto residual_at = [&](long bits) {
    Enclosure r = evaluate(g, end, bits);
    for (int i = 0; i < k; ++i) r = r - evaluate(derivs[i], n, bits).times(weights[i]);
    return r;
  };
  TaylorCheck out;
  out.bound = sup_abs_derivative(f, k, n, end, std::max<long>(cfg.initial_bits, 128)).times(w);
  long bits = std::min(cfg.initial_bits, cfg.precision_cap);
  bits = next_bits(bits / 2, magnitude_bits(evaluate(g, end, 64)), cfg);
  for (;;) {
    out.residual = residual_at(bits);
    Enclosure ra = out.residual.abs();
    if (mpfr_cmp(ra.hi().get(), out.bound.hi().get()) <= 0) {
      out.holds = true;
      return out;
    }
    if (mpfr_cmp(ra.lo().get(), out.bound.hi().get()) > 0 || bits >= cfg.precision_cap) {
      out.holds = false;
      return out;
    }
    bits = next_bits(bits, 0, cfg);
  }
}

}  // namespace kwc
