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

#include "kwc/arith.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "kwc/errors.hpp"

namespace kwc {

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
  }
  return out;
}

mpz_class primorial(std::uint64_t h) {
  mpz_class out;
  mpz_primorial_ui(out.get_mpz_t(), h);
  return out;
}

mpz_class factorial(std::uint64_t n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

std::vector<std::int8_t> mobius_up_to(std::uint64_t limit) {
  std::vector<std::int8_t> mu(limit + 1, 1);
  mu[0] = 0;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p; m <= limit; m += p) {
      if (m > p) composite[m] = true;
      mu[m] = static_cast<std::int8_t>(-mu[m]);
    }
    if (p <= limit / p) {
      for (std::uint64_t m = p * p; m <= limit; m += p * p) mu[m] = 0;
    }
  }
  return mu;
}

mpz_class gcd_tuple(const std::vector<mpz_class>& values) {
  if (values.empty()) throw InputError("gcd of an empty list");
  mpz_class g = 0;
  for (const auto& v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g == 0) throw InputError("gcd of an all-zero list");
  return g;
}

namespace {

// Depth-first over index subsets in lexicographic order. A prefix with gcd 1
// already makes every extension coprime, so it is not expanded.
bool find_failing(const std::vector<mpz_class>& values, int k, std::size_t start,
                  const mpz_class& prefix_gcd, std::vector<std::size_t>& chosen,
                  KwiseResult& out) {
  if (static_cast<int>(chosen.size()) == k) {
    if (prefix_gcd == 1) return false;
    out.coprime = false;
    out.failing_indices = chosen;
    for (auto i : chosen) out.failing_values.push_back(values[i]);
    out.failing_gcd = prefix_gcd;
    return true;
  }
  const std::size_t need = static_cast<std::size_t>(k) - chosen.size();
  for (std::size_t i = start; i + need <= values.size(); ++i) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), prefix_gcd.get_mpz_t(), values[i].get_mpz_t());
    if (g == 1) continue;
    chosen.push_back(i);
    if (find_failing(values, k, i + 1, g, chosen, out)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

KwiseResult kwise_coprime(const std::vector<mpz_class>& values, int k) {
  if (k < 2 || static_cast<std::size_t>(k) > values.size()) {
    throw InputError("k-wise coprimality needs 2 <= k <= " +
                     std::to_string(values.size()) + ", got k = " + std::to_string(k));
  }
  KwiseResult out;
  std::vector<std::size_t> chosen;
  find_failing(values, k, 0, mpz_class(0), chosen, out);
  return out;
}

IntMatrix VandermondeSystem::matrix() const {
  const std::size_t k = nodes.size();
  IntMatrix v(k, std::vector<mpz_class>(k));
  for (std::size_t i = 0; i < k; ++i) {
    mpz_class p = 1;
    for (std::size_t j = 0; j < k; ++j) {
      v[i][j] = p;
      p *= nodes[i];
    }
  }
  return v;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix out(n, std::vector<mpz_class>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < b.size(); ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

VandermondeSystem vandermonde(const std::vector<mpz_class>& nodes) {
  if (nodes.empty()) throw InputError("vandermonde needs at least one node");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i] <= nodes[i - 1]) {
      throw InputError("vandermonde nodes must be strictly increasing");
    }
  }
  VandermondeSystem sys;
  sys.nodes = nodes;
  sys.det = 1;
  const std::size_t k = nodes.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) sys.det *= nodes[j] - nodes[i];
  }
  // Gauss-Jordan on [V | I] over the rationals.
  const IntMatrix v = sys.matrix();
  std::vector<std::vector<mpq_class>> a(k, std::vector<mpq_class>(2 * k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = v[i][j];
    a[i][k + i] = 1;
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    while (pivot < k && a[pivot][col] == 0) ++pivot;
    if (pivot == k) throw InternalContradiction("singular Vandermonde matrix");
    std::swap(a[pivot], a[col]);
    const mpq_class inv = 1 / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const mpq_class factor = a[r][col];
      for (std::size_t c = 0; c < 2 * k; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  sys.scaled_inverse.assign(k, std::vector<mpz_class>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      mpq_class scaled = a[i][k + j] * sys.det;
      scaled.canonicalize();
      if (scaled.get_den() != 1) {
        throw InternalContradiction("det * V^-1 has a non-integer entry");
      }
      sys.scaled_inverse[i][j] = scaled.get_num();
    }
  }
  const IntMatrix check = multiply(v, sys.scaled_inverse);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (check[i][j] != (i == j ? sys.det : mpz_class(0))) {
        throw InternalContradiction("V * scaled inverse != det * I");
      }
    }
  }
  return sys;
}

bool small_prime_nondivisibility(const std::vector<mpz_class>& values,
                                 std::uint64_t h) {
  for (auto p : primes_up_to(h)) {
    for (const auto& v : values) {
      if (mpz_divisible_ui_p(v.get_mpz_t(), p) != 0) return false;
    }
  }
  return true;
}

Enclosure zeta_inverse(int s, double tol) {
  if (s < 2) throw InputError("zeta_inverse needs s >= 2");
  if (!(tol > 0)) throw InputError("zeta_inverse needs tol > 0");
  const long bits = 64 + static_cast<long>(std::ceil(-std::log2(tol)));
  // The tail gap N^(1-s) - (N+1)^(1-s) is below (s-1) N^-s.
  unsigned long n = static_cast<unsigned long>(std::ceil(std::pow(2.0 / tol, 1.0 / s))) + 1;
  for (;;) {
    Real lo(bits), hi(bits), term(bits), tail(bits);
    mpfr_set_zero(lo.get(), 1);
    mpfr_set_zero(hi.get(), 1);
    // Small terms first so the rounding error stays small.
    for (unsigned long m = n; m >= 1; --m) {
      mpfr_ui_pow_ui(term.get(), m, static_cast<unsigned long>(s), MPFR_RNDU);
      mpfr_ui_div(term.get(), 1, term.get(), MPFR_RNDD);
      mpfr_add(lo.get(), lo.get(), term.get(), MPFR_RNDD);
      mpfr_ui_pow_ui(term.get(), m, static_cast<unsigned long>(s), MPFR_RNDD);
      mpfr_ui_div(term.get(), 1, term.get(), MPFR_RNDU);
      mpfr_add(hi.get(), hi.get(), term.get(), MPFR_RNDU);
    }
    // lo += (N+1)^(1-s)/(s-1), hi += N^(1-s)/(s-1)
    mpfr_ui_pow_ui(tail.get(), n + 1, static_cast<unsigned long>(s - 1), MPFR_RNDU);
    mpfr_mul_ui(tail.get(), tail.get(), static_cast<unsigned long>(s - 1), MPFR_RNDU);
    mpfr_ui_div(tail.get(), 1, tail.get(), MPFR_RNDD);
    mpfr_add(lo.get(), lo.get(), tail.get(), MPFR_RNDD);
    mpfr_ui_pow_ui(tail.get(), n, static_cast<unsigned long>(s - 1), MPFR_RNDD);
    mpfr_mul_ui(tail.get(), tail.get(), static_cast<unsigned long>(s - 1), MPFR_RNDD);
    mpfr_ui_div(tail.get(), 1, tail.get(), MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), tail.get(), MPFR_RNDU);
    // 1/zeta in [1/hi, 1/lo]
    Real inv_lo(bits), inv_hi(bits);
    mpfr_ui_div(inv_lo.get(), 1, hi.get(), MPFR_RNDD);
    mpfr_ui_div(inv_hi.get(), 1, lo.get(), MPFR_RNDU);
    Enclosure out = Enclosure::between(std::move(inv_lo), std::move(inv_hi));
    if (mpfr_get_d(out.width().get(), MPFR_RNDU) <= tol) return out;
    n *= 2;
  }
}

}  // namespace kwc
