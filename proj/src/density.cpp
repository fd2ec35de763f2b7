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

#include "kwc/density.hpp"

#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <numeric>

#include "kwc/arith.hpp"
#include "kwc/errors.hpp"

namespace kwc {
namespace {

constexpr double kZetaTolerance = 1e-12;

void finish(DensityReport& r) {
  r.frequency = mpq_class(r.count, r.total);
  r.frequency.canonicalize();
  static std::mutex mu;
  static std::map<int, Enclosure> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(r.zeta_s);
    if (it == cache.end()) {
      it = cache.emplace(r.zeta_s, zeta_inverse(r.zeta_s, kZetaTolerance)).first;
    }
    r.target = it->second;
  }
  r.deviation = std::fabs(r.frequency.get_d() - r.target.midpoint().get_d());
}

// Counts n in [1, N] accepted by `accept`, split over contiguous shards.
mpz_class count_parallel(std::uint64_t N, unsigned jobs,
                         const std::function<bool(std::uint64_t)>& accept) {
  jobs = std::max(1u, jobs);
  const std::uint64_t chunk = (N + jobs - 1) / jobs;
  std::vector<std::future<std::uint64_t>> parts;
  for (std::uint64_t start = 1; start <= N; start += chunk) {
    const std::uint64_t end = std::min(N, start + chunk - 1);
    parts.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                               [&accept, start, end] {
                                 std::uint64_t c = 0;
                                 for (std::uint64_t n = start; n <= end; ++n) c += accept(n) ? 1 : 0;
                                 return c;
                               }));
  }
  mpz_class total = 0;
  for (auto& p : parts) total += static_cast<unsigned long>(p.get());
  return total;
}

bool coprime_with(std::uint64_t n, const mpz_class& v) {
  return mpz_gcd_ui(nullptr, v.get_mpz_t(), static_cast<unsigned long>(n)) == 1;
}

void require_n(std::uint64_t N) {
  if (N < 1) throw InputError("N must be >= 1");
}

}  // namespace

mpz_class coprime_pairs_mobius(std::uint64_t N) {
  const auto mu = mobius_up_to(N);
  mpz_class sum = 0;
  for (std::uint64_t d = 1; d <= N; ++d) {
    if (mu[d] == 0) continue;
    mpz_class q = static_cast<unsigned long>(N / d);
    q *= q;
    if (mu[d] > 0) {
      sum += q;
    } else {
      sum -= q;
    }
  }
  return sum;
}

std::vector<std::uint64_t> coprime_pairs_table(std::uint64_t N) {
  // count(N) = count(N-1) + 2 #{m < N : gcd(m, N) = 1} + [N = 1]
  std::vector<std::uint64_t> out(N + 1, 0);
  for (std::uint64_t n = 1; n <= N; ++n) {
    std::uint64_t fresh = n == 1 ? 1 : 0;
    for (std::uint64_t m = 1; m < n; ++m) fresh += std::gcd(m, n) == 1 ? 2 : 0;
    out[n] = out[n - 1] + fresh;
  }
  return out;
}

DensityReport dirichlet_density(std::uint64_t N, std::uint64_t cross_check_limit) {
  require_n(N);
  DensityReport r;
  r.experiment = "dirichlet";
  r.N = N;
  r.count = coprime_pairs_mobius(N);
  r.total = mpz_class(static_cast<unsigned long>(N)) * static_cast<unsigned long>(N);
  if (N <= cross_check_limit) {
    r.cross_check = mpz_class(static_cast<unsigned long>(coprime_pairs_table(N)[N]));
    if (*r.cross_check != r.count) {
      throw InternalContradiction("Mobius count differs from direct count at N = " +
                                  std::to_string(N));
    }
  }
  r.zeta_s = 2;
  finish(r);
  return r;
}

DensityReport beatty_coprime_density(const Surd& alpha, std::uint64_t N,
                                     const CountOptions& options) {
  require_n(N);
  if (alpha.is_rational() || alpha.sign() <= 0) {
    throw InputError("alpha must be a positive irrational surd");
  }
  const PowerSumExpr f = PowerSumExpr::monomial(alpha, 1);
  DensityReport r;
  r.experiment = "beatty";
  r.parameters = "alpha=" + alpha.to_string();
  r.N = N;
  r.total = static_cast<unsigned long>(N);
  r.count = count_parallel(N, options.jobs, [&](std::uint64_t n) {
    return coprime_with(n, floor_frac(f, mpz_class(static_cast<unsigned long>(n)), 0,
                                      options.eval).floor_part);
  });
  r.zeta_s = 2;
  finish(r);
  return r;
}

DensityReport floor_power_density(const mpq_class& c, std::uint64_t N,
                                  const CountOptions& options) {
  require_n(N);
  if (c <= 1 || c.get_den() == 1) throw InputError("c must be a non-integer above 1");
  const PowerSumExpr f = PowerSumExpr::monomial(Surd(mpq_class(1)), c);
  DensityReport r;
  r.experiment = "floor-power";
  r.parameters = "c=" + c.get_str();
  r.N = N;
  r.total = static_cast<unsigned long>(N);
  r.count = count_parallel(N, options.jobs, [&](std::uint64_t n) {
    return coprime_with(n, floor_frac(f, mpz_class(static_cast<unsigned long>(n)), 0,
                                      options.eval).floor_part);
  });
  r.zeta_s = 2;
  finish(r);
  return r;
}

DensityReport multi_gcd_density(const std::vector<PowerSumExpr>& functions, std::uint64_t N,
                                const CountOptions& options) {
  require_n(N);
  if (functions.empty()) throw InputError("multi_gcd_density needs at least one function");
  DensityReport r;
  r.experiment = "multi";
  for (const auto& f : functions) {
    auto lead = f.dominant();
    if (!lead || sgn(lead->exponent) <= 0 || lead->coefficient.sign() <= 0) {
      throw InputError("function " + f.to_string() + " does not grow");
    }
    r.parameters += (r.parameters.empty() ? "f=" : ";") + f.to_string();
  }
  r.N = N;
  r.total = static_cast<unsigned long>(N);
  r.count = count_parallel(N, options.jobs, [&](std::uint64_t n) {
    const mpz_class x = static_cast<unsigned long>(n);
    mpz_class g = x;
    for (const auto& f : functions) {
      const mpz_class v = floor_frac(f, x, 0, options.eval).floor_part;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) return true;
    }
    return g == 1;
  });
  r.zeta_s = static_cast<int>(functions.size()) + 1;
  finish(r);
  return r;
}

DensityReport run_experiment(const ExperimentSpec& spec, std::uint64_t N,
                             const CountOptions& options) {
  if (spec.name == "dirichlet") return dirichlet_density(N);
  if (spec.name == "beatty") return beatty_coprime_density(spec.alpha, N, options);
  if (spec.name == "floor-power") return floor_power_density(spec.c, N, options);
  if (spec.name == "multi") return multi_gcd_density(spec.functions, N, options);
  throw InputError("unknown experiment '" + spec.name +
                   "' (expected dirichlet, beatty, floor-power or multi)");
}

std::vector<DensityReport> density_table(const ExperimentSpec& spec,
                                         const std::vector<std::uint64_t>& Ns,
                                         const CountOptions& options) {
  std::vector<DensityReport> out;
  for (auto N : Ns) out.push_back(run_experiment(spec, N, options));
  return out;
}

}  // namespace kwc
