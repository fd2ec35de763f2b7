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

#include "kwc/banach.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <random>

#include "kwc/arith.hpp"
#include "kwc/certificate.hpp"
#include "kwc/errors.hpp"

namespace kwc {
namespace {

mpz_class to_mpz(std::uint64_t v) {
  mpz_class out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

mpz_class floor_at(const PowerSumExpr& f, const mpz_class& x, const EvalConfig& cfg) {
  return floor_frac(f, x, 0, cfg).floor_part;
}

struct Failure {
  std::vector<mpz_class> elements;
  mpz_class gcd;
};

}  // namespace

std::uint64_t BanachSet::element_count() const {
  std::uint64_t total = 0;
  for (const auto& b : blocks) total += b.H;
  return total;
}

mpz_class BanachSet::element(std::uint64_t index) const {
  for (const auto& b : blocks) {
    if (index < b.H) return b.n + to_mpz(index + 1);
    index -= b.H;
  }
  throw InputError("element index out of range");
}

std::uint64_t schedule_H(const BanachBlock& prev, const PowerSumExpr& f, const EvalConfig& cfg) {
  if (!prev.certified) throw InputError("schedule_H needs a certified block");
  const mpz_class H = to_mpz(prev.H);
  for (long bits = cfg.initial_bits;; bits = std::min(2 * bits, cfg.precision_cap)) {
    Enclosure sum;
    for (std::uint64_t j = 1; j <= prev.H; ++j) {
      sum = sum + evaluate(f, prev.n + to_mpz(j), bits).abs();
    }
    if (auto fl = sum.plus(mpq_class(H)).common_floor()) {
      const mpz_class next = *fl + 1;
      if (!next.fits_ulong_p()) throw InputError("next window length overflows 64 bits");
      return next.get_ui();
    }
    if (bits >= cfg.precision_cap) {
      throw Undecidable("cannot decide floor of the block sum within the precision cap");
    }
  }
}

WitnessProvider pipeline_provider(LadderOverrides overrides, LadderOptions options,
                                  EvalConfig cfg) {
  return [overrides, options, cfg](const PowerSumExpr& f, int k, std::uint64_t H,
                                   const mpz_class& lower) {
    std::optional<ConstantLadder> ladder;
    if (!overrides.empty()) ladder = build_constants(k, H, overrides);
    WitnessResult w = construct_witness(f, k, H, ladder, options, cfg);
    if (w.n0 <= lower) {
      throw CertificateRejected("pipeline witness " + w.n0.get_str() +
                                " does not exceed the previous block end " + lower.get_str());
    }
    return w.n0;
  };
}

WitnessProvider search_provider(mpz_class start, std::uint64_t attempts, EvalConfig cfg) {
  return [start, attempts, cfg](const PowerSumExpr& f, int k, std::uint64_t H,
                                const mpz_class& lower) {
    mpz_class n = std::max(mpz_class(lower + 1), start);
    for (std::uint64_t i = 0; i < attempts; ++i, ++n) {
      if (check_conditions(f, n, k, H, cfg).all_hold()) return n;
    }
    throw CertificateRejected("no certified window of length " + std::to_string(H) +
                              " found in " + std::to_string(attempts) + " candidates");
  };
}

PowerSumExpr synthetic_banach_function(int m) {
  if (m < 1) throw InputError("m must be positive");
  return PowerSumExpr::from_terms({Term{Surd(mpq_class(mpz_class(1), mpz_class(1) << m)), 1},
                                   Term{Surd(mpq_class(1)), 0}});
}

WitnessProvider synthetic_provider(int m, int k, EvalConfig cfg) {
  if (k < 2 || m < 8 * k + 8) throw InputError("synthetic provider needs k >= 2 and m >= 8k+8");
  return search_provider((mpz_class(1) << (m - 8 * k)) + 1, 64, cfg);
}

BanachSet build_banach_set(const PowerSumExpr& f, int k, std::uint64_t r_max,
                           const WitnessProvider& provider, std::uint64_t H1,
                           const EvalConfig& cfg) {
  if (k < 2) throw InputError("k must be >= 2");
  if (H1 == 0) H1 = static_cast<std::uint64_t>(k);
  if (H1 < static_cast<std::uint64_t>(k)) throw InputError("H1 must be >= k");
  BanachSet set;
  set.f = f;
  set.k = k;
  std::uint64_t H = H1;
  mpz_class lower = 0;
  for (std::uint64_t r = 0; r < r_max; ++r) {
    BanachBlock block;
    block.n = provider(f, k, H, lower);
    block.H = H;
    if (block.n <= lower) {
      throw CertificateRejected("block " + std::to_string(r + 1) + " overlaps its predecessor");
    }
    if (!check_conditions(f, block.n, k, H, cfg).all_hold()) {
      throw CertificateRejected("block " + std::to_string(r + 1) + " at n = " +
                                block.n.get_str() + " fails re-verification");
    }
    block.certified = true;
    set.blocks.push_back(block);
    lower = block.n + to_mpz(H);
    if (r + 1 < r_max) H = schedule_H(block, f, cfg);
  }
  return set;
}

std::vector<std::string> schedule_violations(const BanachSet& set, const EvalConfig& cfg) {
  std::vector<std::string> out;
  for (std::size_t r = 0; r < set.blocks.size(); ++r) {
    const auto& b = set.blocks[r];
    const std::string tag = "block " + std::to_string(r + 1) + ": ";
    if (!b.certified) out.push_back(tag + "not certified");
    if (b.H < 1) out.push_back(tag + "empty window");
    if (r == 0) continue;
    const auto& prev = set.blocks[r - 1];
    if (b.n <= prev.n + to_mpz(prev.H)) out.push_back(tag + "overlaps its predecessor");
    if (b.H <= prev.H) out.push_back(tag + "window length not increasing");
    if (prev.certified && b.H < schedule_H(prev, set.f, cfg)) {
      out.push_back(tag + "window length below the schedule bound");
    }
  }
  return out;
}

mpq_class banach_density_estimate(const BanachSet& set, std::uint64_t H) {
  if (H < 1) throw InputError("window length must be >= 1");
  mpq_class best = 0;
  const mpz_class width = to_mpz(H);
  for (std::size_t r = 0; r < set.blocks.size(); ++r) {
    // window (n_r, n_r + H]; earlier blocks end before it
    const mpz_class start = set.blocks[r].n;
    const mpz_class end = start + width;
    mpz_class hit = 0;
    for (std::size_t s = r; s < set.blocks.size() && set.blocks[s].n < end; ++s) {
      const mpz_class block_end = set.blocks[s].n + to_mpz(set.blocks[s].H);
      hit += std::min(block_end, end) - set.blocks[s].n;
    }
    best = std::max(best, mpq_class(hit, width));
  }
  best.canonicalize();
  return best;
}

CrossBlockResult cross_block_check(const BanachSet& set, int k, std::uint64_t samples,
                                   std::uint64_t seed, unsigned jobs,
                                   std::uint64_t exhaustive_limit, const EvalConfig& cfg) {
  const std::uint64_t E = set.element_count();
  if (E == 0) throw InputError("cross_block_check needs a nonempty set");
  if (k < 2 || static_cast<std::uint64_t>(k) > E) {
    throw InputError("k must lie in [2, number of elements]");
  }
  CrossBlockResult result;
  mpz_class subsets;
  mpz_bin_uiui(subsets.get_mpz_t(), E, static_cast<unsigned long>(k));
  if (subsets <= to_mpz(exhaustive_limit)) {
    std::vector<mpz_class> elements, floors;
    for (std::uint64_t i = 0; i < E; ++i) {
      elements.push_back(set.element(i));
      floors.push_back(floor_at(set.f, elements.back(), cfg));
    }
    KwiseResult kw = kwise_coprime(floors, k);
    result.exhaustive = true;
    result.subsets_checked = subsets.get_ui();
    result.holds = kw.coprime;
    if (!kw.coprime) {
      for (auto idx : kw.failing_indices) result.failing_elements.push_back(elements[idx]);
      result.failing_gcd = kw.failing_gcd;
    }
    return result;
  }

  jobs = std::max(1u, jobs);
  const std::uint64_t chunk = (samples + jobs - 1) / std::max<std::uint64_t>(1, jobs);
  auto shard = [&](std::uint64_t begin, std::uint64_t end) -> std::optional<Failure> {
    std::map<std::uint64_t, mpz_class> cache;
    for (std::uint64_t i = begin; i < end; ++i) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
      std::mt19937_64 rng(seq);
      std::uniform_int_distribution<std::uint64_t> pick(0, E - 1);
      std::vector<std::uint64_t> idx;
      while (idx.size() < static_cast<std::size_t>(k)) {
        const std::uint64_t j = pick(rng);
        if (std::find(idx.begin(), idx.end(), j) == idx.end()) idx.push_back(j);
      }
      std::sort(idx.begin(), idx.end());
      mpz_class g = 0;
      for (auto j : idx) {
        auto it = cache.find(j);
        if (it == cache.end()) it = cache.emplace(j, floor_at(set.f, set.element(j), cfg)).first;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), it->second.get_mpz_t());
      }
      if (g != 1) {
        Failure fail;
        for (auto j : idx) fail.elements.push_back(set.element(j));
        fail.gcd = g;
        return fail;
      }
    }
    return std::nullopt;
  };
  std::vector<std::future<std::optional<Failure>>> parts;
  for (std::uint64_t begin = 0; begin < samples; begin += chunk) {
    parts.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, shard,
                               begin, std::min(samples, begin + chunk)));
  }
  result.subsets_checked = samples;
  for (auto& p : parts) {
    auto fail = p.get();
    if (fail && result.holds) {
      result.holds = false;
      result.failing_elements = fail->elements;
      result.failing_gcd = fail->gcd;
    }
  }
  return result;
}

}  // namespace kwc
