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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kwc/enclosure.hpp"
#include "kwc/powersum.hpp"
#include "kwc/rigor.hpp"

namespace kwc {

// frequency = count / total exactly; deviation = |frequency - mid(target)|
// where target encloses 1/zeta(zeta_s).
struct DensityReport {
  std::string experiment;
  std::string parameters;
  std::uint64_t N = 0;
  mpz_class count;
  mpz_class total;
  mpq_class frequency;
  int zeta_s = 2;
  Enclosure target;
  double deviation = 0;
  std::optional<mpz_class> cross_check;  // independent count, when computed
};

// #{(n, m) in [1, N]^2 : gcd(n, m) = 1} = sum_{d <= N} mu(d) floor(N/d)^2.
mpz_class coprime_pairs_mobius(std::uint64_t N);

// Same count by direct gcds; entry N of the result is the count for N
// (entry 0 is 0). Quadratic, meant as an oracle.
std::vector<std::uint64_t> coprime_pairs_table(std::uint64_t N);

// Cross-checks against the direct count when N <= cross_check_limit.
DensityReport dirichlet_density(std::uint64_t N, std::uint64_t cross_check_limit = 2000);

struct CountOptions {
  unsigned jobs = 1;
  EvalConfig eval;
};

// n <= N with gcd(n, floor(alpha n)) = 1. alpha must be a positive irrational.
DensityReport beatty_coprime_density(const Surd& alpha, std::uint64_t N,
                                     const CountOptions& options = {});

// n <= N with gcd(n, floor(n^c)) = 1, c > 1 not an integer.
DensityReport floor_power_density(const mpq_class& c, std::uint64_t N,
                                  const CountOptions& options = {});

// n <= N with gcd(n, floor(f_1(n)), ..., floor(f_j(n))) = 1; target
// 1/zeta(j+1). Each f_i must have a leading term of positive exponent and
// positive coefficient.
DensityReport multi_gcd_density(const std::vector<PowerSumExpr>& functions,
                                std::uint64_t N, const CountOptions& options = {});

// One report per N for the named experiment ("dirichlet", "beatty",
// "floor-power", "multi"), sharing the experiment arguments.
struct ExperimentSpec {
  std::string name;
  Surd alpha{mpq_class(0)};
  mpq_class c;
  std::vector<PowerSumExpr> functions;
};

DensityReport run_experiment(const ExperimentSpec& spec, std::uint64_t N,
                             const CountOptions& options = {});
std::vector<DensityReport> density_table(const ExperimentSpec& spec,
                                         const std::vector<std::uint64_t>& Ns,
                                         const CountOptions& options = {});

}  // namespace kwc
