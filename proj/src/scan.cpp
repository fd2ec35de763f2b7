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

#include "kwc/scan.hpp"

#include <algorithm>
#include <future>
#include <optional>

#include "kwc/arith.hpp"
#include "kwc/certificate.hpp"
#include "kwc/errors.hpp"

namespace kwc {
namespace {

ScanResult scan_shard(const PowerSumExpr& f, int k, std::uint64_t H,
                      const mpz_class& lo, const mpz_class& hi,
                      const ScanOptions& options, const EvalConfig& cfg) {
  ScanResult out;
  // floors[x - lo - 1] = floor(f(x)) for x in [lo+1, hi+H]; nullopt if undecided.
  std::vector<std::optional<mpz_class>> floors;
  std::vector<std::string> reasons;
  for (mpz_class x = lo + 1; x <= hi + H; ++x) {
    try {
      floors.emplace_back(floor_frac(f, x, 0, cfg).floor_part);
      reasons.emplace_back();
    } catch (const Undecidable& e) {
      floors.emplace_back(std::nullopt);
      reasons.emplace_back(e.what());
    }
  }
  const int width = options.mode == ScanMode::pairwise ? 2 : k;
  std::size_t offset = 0;
  for (mpz_class n = lo; n <= hi; ++n, ++offset) {
    ++out.scanned;
    std::vector<mpz_class> window;
    std::string reason;
    for (std::size_t h = 0; h < H; ++h) {
      const auto& v = floors[offset + h];
      if (!v) {
        reason = reasons[offset + h];
        break;
      }
      window.push_back(*v);
    }
    if (!reason.empty()) {
      out.undecided.push_back({n, reason});
      continue;
    }
    const KwiseResult r = kwise_coprime(window, width);
    if (!r.coprime) {
      if (options.record_rejections) {
        ScanRejection rej{n, {}, r.failing_gcd};
        for (auto i : r.failing_indices) rej.failing_offsets.push_back(i + 1);
        out.rejections.push_back(std::move(rej));
      }
      continue;
    }
    const VerificationReport check = verify_window(f, n, width, H, cfg);
    if (check.window_floors != window || !check.kwise_coprime()) {
      throw InternalContradiction("scan witness n = " + n.get_str() +
                                  " not confirmed by verify_window");
    }
    out.witnesses.push_back(n);
  }
  return out;
}

}  // namespace

ScanResult brute_scan(const PowerSumExpr& f, int k, std::uint64_t H,
                      const mpz_class& lo, const mpz_class& hi,
                      const ScanOptions& options, const EvalConfig& cfg) {
  const int width = options.mode == ScanMode::pairwise ? 2 : k;
  if (width < 2 || H < static_cast<std::uint64_t>(width)) {
    throw InputError("scan needs 2 <= k <= H");
  }
  if (lo < 1 || hi < lo) throw InputError("scan range must satisfy 1 <= lo <= hi");
  const mpz_class count = hi - lo + 1;
  const unsigned jobs = std::max(1u, options.jobs);
  const mpz_class chunk = (count + jobs - 1) / jobs;
  std::vector<std::future<ScanResult>> shards;
  for (mpz_class start = lo; start <= hi; start += chunk) {
    mpz_class end = start + chunk - 1;
    if (end > hi) end = hi;
    shards.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                scan_shard, std::cref(f), k, H, start, end,
                                std::cref(options), std::cref(cfg)));
  }
  ScanResult out;
  for (auto& shard : shards) {
    ScanResult part = shard.get();
    out.scanned += part.scanned;
    for (auto& w : part.witnesses) out.witnesses.push_back(std::move(w));
    for (auto& u : part.undecided) out.undecided.push_back(std::move(u));
    for (auto& r : part.rejections) out.rejections.push_back(std::move(r));
  }
  return out;
}

}  // namespace kwc
