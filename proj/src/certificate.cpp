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

#include "kwc/certificate.hpp"

#include <string>

#include "kwc/errors.hpp"

namespace kwc {
namespace {

mpq_class inverse_power(std::uint64_t base, std::uint64_t exp) {
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), base, exp);
  return mpq_class(mpz_class(1), d);
}

// Strict a < value - floor < b, each side decided with escalation.
bool frac_strictly_between(const PowerSumExpr& g, const mpz_class& x,
                           const mpz_class& floor_part,
                           const std::optional<mpq_class>& lower,
                           const mpq_class& upper, const EvalConfig& cfg) {
  if (lower && compare_value(g, x, mpq_class(floor_part) + *lower, cfg) <= 0) return false;
  return compare_value(g, x, mpq_class(floor_part) + upper, cfg) < 0;
}

// sup bound < t: raise the bound's precision until it is on one side.
bool bound_below(const PowerSumExpr& f, int k, const mpz_class& a,
                 const mpz_class& b, const mpq_class& t, const EvalConfig& cfg,
                 Enclosure* stored) {
  long bits = std::max<long>(cfg.initial_bits, 128);
  for (;;) {
    Enclosure e = sup_abs_derivative(f, k, a, b, bits);
    if (stored) *stored = e;
    auto c = e.compare(t);
    if (c) return *c < 0;
    if (bits >= cfg.precision_cap) {
      throw Undecidable("derivative bound not separated from " + t.get_str());
    }
    bits = std::min(bits * 2, cfg.precision_cap);
  }
}

mpz_class smallest_prime_factor(const mpz_class& g, bool& certain) {
  certain = true;
  for (unsigned long p = 2; p <= 1000000; ++p) {
    if (mpz_cmp_ui(g.get_mpz_t(), p) < 0) break;
    if (mpz_divisible_ui_p(g.get_mpz_t(), p) != 0) return mpz_class(p);
  }
  if (mpz_probab_prime_p(g.get_mpz_t(), 30) == 0) certain = false;
  return g;
}

}  // namespace

WindowCertificate check_conditions(const PowerSumExpr& f, const mpz_class& n,
                                   int k, std::uint64_t H, const EvalConfig& cfg) {
  if (k < 2) throw InputError("k must be >= 2");
  if (H < static_cast<std::uint64_t>(k)) throw InputError("H must be >= k");
  if (n < 1) throw InputError("n must be >= 1");
  WindowCertificate cert;
  cert.f = f;
  cert.n = n;
  cert.k = k;
  cert.H = H;
  const auto uk = static_cast<std::uint64_t>(k);
  const mpz_class modulus = factorial(uk) * primorial(H);

  std::vector<PowerSumExpr> derivs;
  for (int i = 0; i < k; ++i) {
    derivs.push_back(differentiate(f, i));
    FloorFrac ff = floor_frac(derivs.back(), n, 0, cfg);
    cert.floors.push_back(ff.floor_part);
    cert.frac_bounds.push_back(ff.frac);
  }

  cert.c0 = frac_strictly_between(derivs[0], n, cert.floors[0],
                                  inverse_power(4, 4 * uk), mpq_class(1, 4), cfg);

  bool small_fracs = true;
  for (int i = 1; i < k && small_fracs; ++i) {
    mpq_class t = inverse_power(H, static_cast<std::uint64_t>(i)) / 4;
    small_fracs = frac_strictly_between(derivs[i], n, cert.floors[i], std::nullopt, t, cfg);
  }
  const mpz_class end = n + H;
  const mpq_class hk = inverse_power(H, uk);
  const bool weak = bound_below(f, k, n, end, inverse_power(4, 4 * uk) * hk, cfg,
                                &cert.kth_bound);
  cert.c1 = small_fracs && weak;
  cert.c1_strong =
      small_fracs && bound_below(f, k, n, end, inverse_power(4, 6 * uk) * hk, cfg, nullptr);

  cert.c2 = true;
  for (int i = 1; i < k; ++i) {
    if (mpz_divisible_p(cert.floors[i].get_mpz_t(), modulus.get_mpz_t()) == 0) {
      cert.c2 = false;
    }
  }

  for (int ell = 1; ell < k; ++ell) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), cert.floors[0].get_mpz_t(), cert.floors[ell].get_mpz_t());
    if (g == 1) {
      cert.ell = ell;
      break;
    }
  }
  cert.c3 = cert.ell.has_value();
  return cert;
}

mpz_class reconstruct_window(const WindowCertificate& cert, std::uint64_t h) {
  if (!(cert.c0 && cert.c1 && cert.c2)) {
    throw CertificateRejected("reconstruction needs c0, c1 and c2 to hold");
  }
  if (h > cert.H) throw InputError("h must lie in [0, H]");
  mpz_class sum = 0;
  mpz_class hp = 1;
  for (int i = 0; i < cert.k; ++i) {
    mpz_class q;
    const mpz_class fi = factorial(static_cast<std::uint64_t>(i));
    mpz_divexact(q.get_mpz_t(), cert.floors[i].get_mpz_t(), fi.get_mpz_t());
    sum += hp * q;
    hp *= h;
  }
  return sum;
}

VandermondeDiagnostic vandermonde_diagnostic(const std::vector<mpz_class>& nodes,
                                             const std::vector<mpz_class>& floors,
                                             std::uint64_t H) {
  VandermondeDiagnostic d;
  d.nodes = nodes;
  d.floors = floors;
  d.gcd = gcd_tuple(floors);
  d.prime = smallest_prime_factor(d.gcd, d.prime_certain);
  d.p_le_H = mpz_cmp_ui(d.prime.get_mpz_t(), H) <= 0;
  d.det = vandermonde(nodes).det;
  d.p_divides_det = d.gcd != 1 && mpz_divisible_p(d.det.get_mpz_t(), d.prime.get_mpz_t()) != 0;
  return d;
}

VerificationReport verify_window(const PowerSumExpr& f, const mpz_class& n, int k,
                                 std::uint64_t H, const EvalConfig& cfg) {
  if (n < 1) throw InputError("n must be >= 1");
  if (H < 1) throw InputError("H must be >= 1");
  VerificationReport r;
  r.f = f;
  r.n = n;
  r.k = k;
  r.H = H;
  for (std::uint64_t h = 1; h <= H; ++h) {
    r.window_floors.push_back(floor_frac(f, n + h, 0, cfg).floor_part);
  }
  r.small_primes_ok = small_prime_nondivisibility(r.window_floors, H);
  if (k < 2 || H < static_cast<std::uint64_t>(k)) return r;

  r.certificate = check_conditions(f, n, k, H, cfg);
  const WindowCertificate& cert = *r.certificate;
  if (cert.c0 && cert.c1 && cert.c2) {
    bool match = true;
    for (std::uint64_t h = 1; h <= H; ++h) {
      match = match && reconstruct_window(cert, h) == r.window_floors[h - 1];
    }
    r.reconstruction_matches = match;
  }
  r.kwise = kwise_coprime(r.window_floors, k);
  if (!r.kwise->coprime) {
    std::vector<mpz_class> nodes;
    for (auto i : r.kwise->failing_indices) nodes.emplace_back(static_cast<unsigned long>(i + 1));
    r.diagnostic = vandermonde_diagnostic(nodes, r.kwise->failing_values, H);
  }
  return r;
}

}  // namespace kwc
