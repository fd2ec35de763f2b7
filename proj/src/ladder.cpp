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

#include "kwc/ladder.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "kwc/arith.hpp"
#include "kwc/errors.hpp"

namespace kwc {
namespace {

mpz_class pow2(unsigned long e) { return mpz_class(1) << e; }

mpz_class pow_z(const mpz_class& base, unsigned long e) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

mpq_class pow_q(const mpq_class& base, unsigned long e) {
  mpq_class out(pow_z(base.get_num(), e), pow_z(base.get_den(), e));
  out.canonicalize();
  return out;
}

mpz_class floor_q(const mpq_class& q) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class out;
  mpz_fdiv_r(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return out;
}

// Short rendering for messages: exact below 30 digits, else ~2^e.
std::string brief(const mpq_class& q) {
  const std::string exact = q.get_str();
  if (exact.size() <= 30) return exact;
  const long e = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
                 static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  return std::string(sgn(q) < 0 ? "-" : "") + "~2^" + std::to_string(e);
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

// Least integer x >= 1 with x^e > y, e = p/q > 0, given y^2 >= 0:
// x^e > y  <=>  x^(2p) > (y^2)^q  <=>  x^(2p) > floor((y^2)^q).
mpz_class least_power_exceeding(const mpq_class& e, const mpq_class& y2) {
  const mpz_class& p = e.get_num();
  const mpz_class& q = e.get_den();
  if (sgn(p) <= 0 || !p.fits_ulong_p() || !q.fits_ulong_p()) {
    throw InputError("unsupported exponent in dominance bound");
  }
  const mpz_class z = floor_q(pow_q(y2, q.get_ui()));
  mpz_class root;
  mpz_root(root.get_mpz_t(), z.get_mpz_t(), 2 * p.get_ui());
  return std::max(mpz_class(1), mpz_class(root + 1));
}

// Sign of (value - t) for a value given at integer x.
int sign_at(const PowerSumExpr& g, const mpz_class& x, const mpq_class& t,
            const EvalConfig& cfg, std::uint64_t& counter) {
  ++counter;
  return compare_value(g, x, t, cfg);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InternalContradiction(what);
}

}  // namespace

mpq_class ConstantLadder::A(int stage, int i) const {
  return mpq_class(C.at(static_cast<std::size_t>(i)) * pow2(static_cast<unsigned long>(stage - 1)));
}

mpq_class ConstantLadder::B(int stage, int i) const {
  mpq_class out(D.at(static_cast<std::size_t>(i)), pow2(static_cast<unsigned long>(stage - 1)));
  out.canonicalize();
  return out;
}

LadderOverrides parse_overrides(std::string_view text) {
  LadderOverrides out;
  std::stringstream in{std::string(text)};
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(),
                              [](unsigned char c) { return std::isspace(c) != 0; }),
               item.end());
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq < 2) {
      throw InputError("constant override '" + item + "' is not KEY=VALUE");
    }
    const char key = static_cast<char>(std::toupper(static_cast<unsigned char>(item[0])));
    const std::string index_text = item.substr(1, eq - 1);
    const std::string value_text = item.substr(eq + 1);
    if (index_text.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("bad index in constant override '" + item + "'");
    }
    const int index = std::stoi(index_text);
    mpz_class value;
    const auto caret = value_text.find('^');
    try {
      if (caret == std::string::npos) {
        value = mpz_class(value_text, 10);
      } else {
        const mpz_class base(value_text.substr(0, caret), 10);
        const mpz_class e(value_text.substr(caret + 1), 10);
        if (!e.fits_ulong_p() || e > 1000000) throw std::invalid_argument("exponent");
        value = pow_z(base, e.get_ui());
      }
    } catch (const std::invalid_argument&) {
      throw InputError("bad value in constant override '" + item + "'");
    }
    if (key == 'C' || key == 'A') {
      out.C[index] = value;
    } else if (key == 'D' || key == 'B') {
      out.D[index] = value;
    } else {
      throw InputError("unknown constant '" + item.substr(0, eq) + "'");
    }
  }
  return out;
}

ConstantLadder default_constants(int k, std::uint64_t H) {
  if (k < 2 || H < static_cast<std::uint64_t>(k)) {
    throw InputError("constants need 2 <= k <= H");
  }
  ConstantLadder L;
  L.k = k;
  L.H = H;
  const auto uk = static_cast<unsigned long>(k);
  L.modulus = factorial(uk) * primorial(H);
  L.D.assign(uk + 1, 0);
  L.C.assign(uk, 0);
  L.D[0] = 4 * pow2(uk);
  L.D[1] = pow2(8 * uk) * L.modulus;
  for (int i = 1; i <= k - 2; ++i) {
    L.D[static_cast<std::size_t>(i + 1)] = 2 * pow_z(L.D[static_cast<std::size_t>(i)], 6);
  }
  for (int i = 0; i <= k - 1; ++i) {
    L.C[static_cast<std::size_t>(i)] =
        pow2(5 * static_cast<unsigned long>(k - i)) * L.D[static_cast<std::size_t>(i)];
  }
  L.D[uk] = pow_z(4 * L.modulus * pow2(uk) * L.C[uk - 1], 6 * (uk + 1));
  L.source = LadderSource::defaults;
  return L;
}

std::vector<std::string> stage_violations(const ConstantLadder& L, int t) {
  std::vector<std::string> out;
  const int k = L.k;
  const int m = k - t;
  if (t < 1 || m < 1) {
    out.push_back("stage " + std::to_string(t) + " outside [1, k-1]");
    return out;
  }
  const std::string tag = "stage " + std::to_string(t) + ": ";
  auto A = [&](int i) { return L.A(t, i); };
  auto B = [&](int i) { return L.B(t, i); };
  auto idx = [](const char* name, int i) { return std::string(name) + "_" + std::to_string(i); };
  const mpq_class M(L.modulus);
  for (int i = m; i <= k - 1; ++i) {
    if (!(B(i) < A(i))) {
      out.push_back(tag + idx("B", i) + " < " + idx("A", i) + " fails (" + brief(B(i)) +
                    " vs " + brief(A(i)) + ")");
    }
  }
  for (int i = m + 1; i <= k; ++i) {
    const mpq_class prev6 = pow_q(B(i - 1), 6);
    if (!(B(i) > prev6)) {
      out.push_back(tag + idx("B", i) + " > " + idx("B", i - 1) + "^6 fails (" + brief(B(i)) +
                    " vs " + brief(prev6) + ")");
    }
  }
  for (int i = m + 1; i <= k - 1; ++i) {
    if (!(A(i) > A(i - 1))) out.push_back(tag + "A not increasing at " + idx("A", i));
  }
  const mpq_class am_cap = B(m) * B(m) / (16 * M);
  if (!(A(m) < am_cap)) {
    out.push_back(tag + idx("A", m) + " < " + idx("B", m) + "^2/(16M) fails (" + brief(A(m)) +
                  " vs " + brief(am_cap) + ")");
  }
  const mpq_class bk_floor = pow_q(4 * M * A(k - 1), static_cast<unsigned long>(k + 1));
  if (!(B(k) > bk_floor)) {
    out.push_back(tag + idx("B", k) + " > (4M " + idx("A", k - 1) + ")^(k+1) fails (" +
                  brief(B(k)) + " vs " + brief(bk_floor) + ")");
  }
  if (!(B(m - 1) < A(m - 1))) {
    out.push_back(tag + idx("B", m - 1) + " < " + idx("A", m - 1) + " fails");
  }
  if (!(20 * B(m - 1) / A(m - 1) < B(m) / A(m))) {
    out.push_back(tag + "20 " + idx("B", m - 1) + "/" + idx("A", m - 1) + " < " + idx("B", m) +
                  "/" + idx("A", m) + " fails (" + brief(20 * B(m - 1) / A(m - 1)) + " vs " +
                  brief(B(m) / A(m)) + ")");
  }
  if (!(M * A(m - 1) < A(m))) {
    out.push_back(tag + "M " + idx("A", m - 1) + " < " + idx("A", m) + " fails");
  }
  return out;
}

std::vector<std::string> seeding_violations(const ConstantLadder& L) {
  std::vector<std::string> out;
  const auto uk = static_cast<std::size_t>(L.k);
  if (L.C.size() != uk || L.D.size() != uk + 1) {
    out.push_back("ladder needs k values of C and k+1 values of D");
    return out;
  }
  for (std::size_t i = 0; i < uk; ++i) {
    if (L.C[i] <= 0) out.push_back("C_" + std::to_string(i) + " must be positive");
  }
  for (std::size_t i = 0; i <= uk; ++i) {
    if (L.D[i] <= 0) out.push_back("D_" + std::to_string(i) + " must be positive");
  }
  if (!out.empty()) return out;
  const mpq_class inv_c(mpz_class(1), L.C[uk - 1]);
  const mpq_class half_d(mpz_class(1), 2 * L.D[uk - 1]);
  const mpq_class inv_d(mpz_class(1), L.D[uk - 1]);
  const mpq_class inv_dk(mpz_class(1), L.D[uk]);
  if (!(inv_c <= half_d - inv_dk)) {
    out.push_back("seed: 1/C_" + std::to_string(uk - 1) + " <= 1/(2D_" + std::to_string(uk - 1) +
                  ") - 1/D_" + std::to_string(uk) + " fails");
  }
  if (!(half_d + inv_dk <= inv_d)) {
    out.push_back("seed: 1/(2D_" + std::to_string(uk - 1) + ") + 1/D_" + std::to_string(uk) +
                  " <= 1/D_" + std::to_string(uk - 1) + " fails");
  }
  return out;
}

std::vector<std::string> admissibility_violations(const ConstantLadder& L) {
  std::vector<std::string> out = seeding_violations(L);
  if (!out.empty()) return out;
  for (int t = 1; t <= L.k - 1; ++t) {
    auto v = stage_violations(L, t);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

ConstantLadder apply_overrides(int k, std::uint64_t H, const LadderOverrides& overrides) {
  ConstantLadder L = default_constants(k, H);
  for (const auto& [i, v] : overrides.C) {
    if (i < 0 || i >= k) throw InputError("C_" + std::to_string(i) + " is not in C_0..C_{k-1}");
    L.C[static_cast<std::size_t>(i)] = v;
  }
  for (const auto& [i, v] : overrides.D) {
    if (i < 0 || i > k) throw InputError("D_" + std::to_string(i) + " is not in D_0..D_k");
    L.D[static_cast<std::size_t>(i)] = v;
  }
  if (!overrides.empty()) L.source = LadderSource::user_override;
  return L;
}

ConstantLadder build_constants(int k, std::uint64_t H, const LadderOverrides& overrides) {
  ConstantLadder L = apply_overrides(k, H, overrides);
  const auto violations = admissibility_violations(L);
  if (!violations.empty()) throw InadmissibleLadder(join(violations));
  return L;
}

SeedResult seed_top_level(const PowerSumExpr& f, int k, const ConstantLadder& L,
                          const EvalConfig& cfg) {
  const HypothesisReport hyp = check_hypotheses(f, k);
  if (!hyp.vanishing_kth) {
    throw HypothesisFailure("f^(" + std::to_string(k) + ") does not tend to 0");
  }
  if (!hyp.unbounded_k_minus_1) {
    throw HypothesisFailure("f^(" + std::to_string(k - 1) + ") is not unbounded above");
  }
  if (L.k != k) throw InputError("ladder was built for a different k");
  const auto uk = static_cast<std::size_t>(k);
  const PowerSumExpr g = differentiate(f, k);
  const PowerSumExpr top = differentiate(f, k - 1);

  SeedResult out;
  // Term dominance on [x0, inf): with J terms c_j x^(e_j) in f^(k), all e_j < 0,
  //   |c_j| x^(e_j) < 1/(J D_k) for every j, and
  //   |c_j| x^(e_j) < c_0 x^(e_0) / J for j >= 1,
  // so |f^(k)| < 1/D_k and f^(k) > 0 there.
  const auto& terms = g.terms();
  const mpq_class J(static_cast<long>(terms.size()));
  const mpq_class jd = J * L.D[uk];
  out.x0 = 2;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const mpq_class decay = -terms[j].exponent;
    out.x0 = std::max(out.x0, least_power_exceeding(decay, jd * jd * terms[j].coefficient.square()));
    if (j > 0) {
      const mpq_class gap = terms[0].exponent - terms[j].exponent;
      const mpq_class ratio = J * J * terms[j].coefficient.square() / terms[0].coefficient.square();
      out.x0 = std::max(out.x0, least_power_exceeding(gap, ratio));
    }
  }
  require(terms.empty() || terms[0].coefficient.sign() > 0,
          "leading term of f^(k) is not positive");

  // Least s >= 1 with (k!)^s primorial(H) + 1/(2 D_{k-1}) > f^(k-1)(x0).
  const mpq_class delta(mpz_class(1), 2 * L.D[uk - 1]);
  const mpz_class kfact = factorial(uk);
  const mpz_class at_x0 = floor_frac(top, out.x0, 0, cfg).floor_part;
  out.s = 1;
  out.target_floor = kfact * primorial(L.H);
  while (out.target_floor < at_x0) {
    out.target_floor *= kfact;
    ++out.s;
  }
  if (out.target_floor == at_x0 &&
      sign_at(top, out.x0, mpq_class(out.target_floor) + delta, cfg, out.evaluations) >= 0) {
    out.target_floor *= kfact;
    ++out.s;
  }
  out.threshold = mpq_class(out.target_floor) + delta;

  // f^(k-1) is increasing past x0: bracket by doubling, then bisect for the
  // least integer n with f^(k-1)(n) > threshold.
  mpz_class lo = out.x0;
  mpz_class hi = 2 * lo;
  while (sign_at(top, hi, out.threshold, cfg, out.evaluations) <= 0) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const mpz_class mid = (lo + hi) / 2;
    if (sign_at(top, mid, out.threshold, cfg, out.evaluations) > 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.n = hi;

  const FloorFrac ff = floor_frac(top, out.n, 0, cfg);
  out.frac = ff.frac;
  require(ff.floor_part == out.target_floor,
          "seed floor differs from (k!)^s primorial(H)");
  const mpq_class lower(mpz_class(1), L.C[uk - 1]);
  const mpq_class upper(mpz_class(1), L.D[uk - 1]);
  require(compare_value(top, out.n, mpq_class(ff.floor_part) + lower, cfg) > 0 &&
              compare_value(top, out.n, mpq_class(ff.floor_part) + upper, cfg) < 0,
          "seed fractional part outside (1/C_{k-1}, 1/D_{k-1})");
  return out;
}

LadderState initial_state(const SeedResult& seed, const ConstantLadder& L) {
  LadderState st;
  st.m = L.k - 1;
  st.stage = 1;
  st.n0 = seed.n;
  st.orders.push_back(OrderState{L.k - 1, seed.target_floor,
                                 mod_pos(seed.target_floor, L.modulus), seed.frac});
  return st;
}

std::pair<LadderState, LadderTrace> ladder_step(const PowerSumExpr& f,
                                                const LadderState& state,
                                                const mpz_class& target,
                                                const ConstantLadder& L,
                                                const LadderOptions& options,
                                                const EvalConfig& cfg) {
  const int k = L.k;
  const int m = state.m;
  const int t = state.stage;
  if (m < 1 || t != k - m) throw InputError("ladder state has m = " + std::to_string(m) +
                                            " at stage " + std::to_string(t));
  const auto violations = stage_violations(L, t);
  if (!violations.empty()) throw InadmissibleLadder(join(violations));
  const mpz_class& M = L.modulus;
  const mpz_class& n0 = state.n0;

  // The incoming state must hold as stated.
  require(state.orders.size() == static_cast<std::size_t>(k - m), "ladder state is incomplete");
  for (const OrderState& o : state.orders) {
    const PowerSumExpr gi = differentiate(f, o.order);
    const FloorFrac ff = floor_frac(gi, n0, 0, cfg);
    require(ff.floor_part == o.floor_part, "state floor of order " + std::to_string(o.order) +
                                               " does not match");
    require(mod_pos(ff.floor_part, M) == mod_pos(o.residue, M),
            "state residue of order " + std::to_string(o.order) + " does not match");
    require(compare_value(gi, n0, mpq_class(ff.floor_part) + 1 / L.A(t, o.order), cfg) > 0 &&
                compare_value(gi, n0, mpq_class(ff.floor_part) + 1 / L.B(t, o.order), cfg) < 0,
            "state fractional part of order " + std::to_string(o.order) + " out of range");
  }

  LadderTrace tr;
  tr.m = m;
  tr.stage = t;
  const PowerSumExpr g = differentiate(f, m - 1);
  // a_h = f^(m-1)(n0 + h) - sum_{i=1}^{k-m} h^i/i! floor(f^(m+i-1)(n0))
  auto shift = [&](const mpz_class& h) {
    mpq_class sum = 0;
    mpq_class w = 1;
    for (int i = 1; i <= k - m; ++i) {
      w = w * h / i;
      sum += w * state.orders[static_cast<std::size_t>(i - 1)].floor_part;
    }
    return sum;
  };
  auto a = [&](const mpz_class& h) {
    const mpq_class p = shift(h);
    const mpz_class x = n0 + h;
    return std::function<Enclosure(long)>(
        [&g, p, x](long bits) { return evaluate(g, x, bits).plus(-p); });
  };
  const mpq_class Am = L.A(t, m);
  const mpq_class Bm = L.B(t, m);
  require(Am.get_den() == 1, "A_m is not an integer");
  tr.R = 2 * M * Am.get_num();

  const mpz_class a0_floor = floor_frac(a(0), cfg).floor_part;
  tr.b = a0_floor + 1 + mod_pos(target - (a0_floor + 1), M);
  {
    Enclosure e;
    const int c = compare_value(a(tr.R), mpq_class(tr.b), cfg, &e);
    tr.probes.push_back(Probe{tr.R, e, c});
    require(c > 0, "no b = v (mod M) in (a_0, a_R)");
  }

  auto probe = [&](const mpz_class& h, bool keep) {
    Enclosure e;
    const int c = compare_value(a(h), mpq_class(tr.b), cfg, &e);
    if (keep) tr.probes.push_back(Probe{h, e, c});
    return c;
  };
  std::set<mpz_class> sample_at{mpz_class(0), tr.R - 1, 2 * tr.R - 1};
  if (options.search == RootSearch::binary) {
    // a_lo < b <= a_hi throughout.
    mpz_class lo = 0, hi = tr.R;
    while (hi - lo > 1) {
      const mpz_class mid = (lo + hi) / 2;
      sample_at.insert(mid);
      if (probe(mid, true) >= 0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    tr.r = hi;
  } else {
    tr.r = 0;
    for (mpz_class h = 1; h <= tr.R; ++h) {
      if (probe(h, options.trace) >= 0) {
        tr.r = h;
        break;
      }
    }
    require(tr.r > 0, "linear scan found no h with a_h >= b");
  }

  tr.r0 = mod_pos(tr.r, M);
  const mpq_class Am1 = L.A(t, m - 1);
  tr.t = (floor_q(4 * Am / (mpq_class(M) * Am1)) + 1) * M - tr.r0;
  require(tr.t > 0 && tr.t <= tr.R, "t outside (0, R]");
  tr.s = tr.r + tr.t;
  tr.n1 = n0 + tr.s;
  require(mod_pos(tr.s, M) == 0, "s is not divisible by M");
  require(tr.s <= 4 * M * Am.get_num(), "n1 beyond n0 + 4 M A_m");

  // Increments a_{h+1} - a_h in (1/(3 A_m), 3/B_m).
  sample_at.insert(tr.r - 1);
  sample_at.insert(tr.r);
  sample_at.insert(tr.s - 1);
  const mpq_class inc_lo = 1 / (3 * Am);
  const mpq_class inc_hi = 3 / Bm;
  for (const mpz_class& h : sample_at) {
    if (h < 0) continue;
    const mpq_class dp = shift(h + 1) - shift(h);
    const mpz_class x = n0 + h;
    std::function<Enclosure(long)> inc = [&g, dp, x](long bits) {
      return (evaluate(g, x + 1, bits) - evaluate(g, x, bits)).plus(-dp);
    };
    Enclosure e;
    require(compare_value(inc, mpq_class(0), cfg) > 0,
            "a_h not increasing at h = " + h.get_str());
    require(compare_value(inc, inc_lo, cfg, &e) > 0 && compare_value(inc, inc_hi, cfg) < 0,
            "increment at h = " + h.get_str() + " outside (1/(3A_m), 3/B_m)");
    tr.increments.push_back(IncrementSample{h, e});
  }

  LadderState next;
  next.m = m - 1;
  next.stage = t + 1;
  next.n0 = tr.n1;
  for (int i = m - 1; i <= k - 1; ++i) {
    const PowerSumExpr gi = differentiate(f, i);
    const FloorFrac ff = floor_frac(gi, tr.n1, 0, cfg);
    const mpz_class residue =
        i == m - 1 ? mod_pos(target, M) : state.orders[static_cast<std::size_t>(i - m)].residue;
    require(mod_pos(ff.floor_part, M) == residue,
            "floor of order " + std::to_string(i) + " at n1 has the wrong residue");
    const mpq_class lower = 1 / (2 * L.A(t, i));
    const mpq_class upper = 2 / L.B(t, i);
    require(compare_value(gi, tr.n1, mpq_class(ff.floor_part) + lower, cfg) > 0 &&
                compare_value(gi, tr.n1, mpq_class(ff.floor_part) + upper, cfg) < 0,
            "fractional part of order " + std::to_string(i) + " at n1 out of range");
    next.orders.push_back(OrderState{i, ff.floor_part, residue, ff.frac});
  }
  return {std::move(next), std::move(tr)};
}

WitnessResult construct_witness(const PowerSumExpr& f, int k, std::uint64_t H,
                                const std::optional<ConstantLadder>& ladder,
                                const LadderOptions& options, const EvalConfig& cfg) {
  if (k < 2 || H < static_cast<std::uint64_t>(k)) {
    throw InputError("witness construction needs 2 <= k <= H");
  }
  WitnessResult out;
  out.ladder = ladder ? *ladder : build_constants(k, H);
  const ConstantLadder& L = out.ladder;
  if (L.k != k || L.H != H) throw InputError("ladder was built for a different (k, H)");
  const auto violations = admissibility_violations(L);
  if (!violations.empty()) throw InadmissibleLadder(join(violations));
  const auto uk = static_cast<std::size_t>(k);

  out.seed = seed_top_level(f, k, L, cfg);
  LadderState state = initial_state(out.seed, L);
  while (state.m > 0) {
    const mpz_class target = state.m - 1 == 0 ? 1 : 0;
    auto [next, trace] = ladder_step(f, state, target, L, options, cfg);
    state = std::move(next);
    out.steps.push_back(std::move(trace));
  }
  out.n0 = state.n0;
  out.displacement = out.n0 - out.seed.n;
  require(out.displacement <= 4 * L.modulus * pow2(uk) * L.C[uk - 1],
          "total displacement beyond 4 M 2^k C_{k-1}");

  const PowerSumExpr top = differentiate(f, k - 1);
  const mpz_class n0 = out.n0, n_seed = out.seed.n;
  std::function<Enclosure(long)> drift = [&](long bits) {
    return evaluate(top, n0, bits) - evaluate(top, n_seed, bits);
  };
  const mpq_class bound(mpz_class(1), L.C[uk - 1]);
  require(compare_value(drift, bound, cfg, &out.drift) < 0 &&
              compare_value(drift, -bound, cfg) > 0,
          "drift of f^(k-1) not below 1/C_{k-1}");
  require(floor_frac(top, n0, 0, cfg).floor_part == out.seed.target_floor,
          "floor of f^(k-1) moved away from (k!)^s primorial(H)");

  out.certificate = check_conditions(f, out.n0, k, H, cfg);
  const WindowCertificate& c = out.certificate;
  if (!c.all_hold()) {
    throw CertificateRejected(std::string("final window fails:") + (c.c0 ? "" : " c0") +
                              (c.c1 ? "" : " c1") + (c.c2 ? "" : " c2") + (c.c3 ? "" : " c3"));
  }
  return out;
}

}  // namespace kwc
