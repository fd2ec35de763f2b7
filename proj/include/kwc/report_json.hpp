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

#include <string>

#include "json.hpp"
#include "kwc/banach.hpp"
#include "kwc/certificate.hpp"
#include "kwc/density.hpp"
#include "kwc/ladder.hpp"
#include "kwc/scan.hpp"

namespace kwc {

// Every document carries "schema": "kwc.<name>/<version>". Big integers and
// rationals are decimal strings; enclosure endpoints are outward-rounded
// decimal strings.
using Json = nlohmann::ordered_json;

inline constexpr int kEnclosureDigits = 40;

Json to_json(const Enclosure& e);
Json to_json(const WindowCertificate& c);
Json to_json(const KwiseResult& r);
Json to_json(const VandermondeDiagnostic& d);
Json to_json(const ConstantLadder& L);
Json to_json(const LadderTrace& t);
Json to_json(const SeedResult& s);

Json eval_json(const PowerSumExpr& f, const mpz_class& x, int order, const FloorFrac& ff,
               const Enclosure& value);
Json hypotheses_json(const PowerSumExpr& f, const HypothesisReport& r);
Json verification_json(const VerificationReport& r);
Json scan_json(const PowerSumExpr& f, int k, std::uint64_t H, const mpz_class& lo,
               const mpz_class& hi, ScanMode mode, const ScanResult& r);
Json ladder_json(const ConstantLadder& L, const std::vector<std::string>& violations);
Json witness_json(const WitnessResult& w, bool with_trace);
Json density_json(const std::vector<DensityReport>& rows);
Json banach_json(const BanachSet& set, const std::vector<std::pair<std::uint64_t, mpq_class>>&
                                           density, const std::optional<CrossBlockResult>& cross);
Json error_json(const std::string& kind, const std::string& message);

// Inverse of the "blocks"/"f"/"k" part of banach_json.
BanachSet banach_from_json(const Json& doc);

std::string density_csv(const std::vector<DensityReport>& rows);

}  // namespace kwc
