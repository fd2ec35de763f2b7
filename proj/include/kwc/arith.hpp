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
#include <vector>

#include "kwc/enclosure.hpp"

namespace kwc {

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// Product of the primes <= h; 1 for h < 2.
mpz_class primorial(std::uint64_t h);
mpz_class factorial(std::uint64_t n);

// mu(0) is unused and set to 0.
std::vector<std::int8_t> mobius_up_to(std::uint64_t limit);

// Nonnegative gcd. Throws InputError for an empty or all-zero list.
mpz_class gcd_tuple(const std::vector<mpz_class>& values);

struct KwiseResult {
  bool coprime = true;
  // First k-subset (lexicographic by index) with gcd > 1.
  std::vector<std::size_t> failing_indices;
  std::vector<mpz_class> failing_values;
  mpz_class failing_gcd;
};

// Every k-subset has gcd 1. Requires 2 <= k <= values.size().
KwiseResult kwise_coprime(const std::vector<mpz_class>& values, int k);

using IntMatrix = std::vector<std::vector<mpz_class>>;

// V = (h_i^(j-1)), det(V) = prod_{i<j} (h_j - h_i), and the integer matrix
// det(V) * V^-1.
struct VandermondeSystem {
  std::vector<mpz_class> nodes;
  mpz_class det;
  IntMatrix scaled_inverse;

  IntMatrix matrix() const;
};

// Throws InputError unless the nodes are strictly increasing.
VandermondeSystem vandermonde(const std::vector<mpz_class>& nodes);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

// No prime p <= h divides any of the values.
bool small_prime_nondivisibility(const std::vector<mpz_class>& values,
                                 std::uint64_t h);

// 1/zeta(s) from a partial sum with the integral tail bounds
//   (N+1)^(1-s)/(s-1) <= sum_{n>N} n^-s <= N^(1-s)/(s-1).
// Width <= tol. Requires s >= 2, tol > 0.
Enclosure zeta_inverse(int s, double tol);

}  // namespace kwc
