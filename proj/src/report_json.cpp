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

#include "kwc/report_json.hpp"

#include <sstream>

#include "kwc/errors.hpp"

namespace kwc {
namespace {

std::string str(const mpz_class& v) { return v.get_str(); }
std::string str(const mpq_class& v) { return v.get_str(); }

Json strings(const std::vector<mpz_class>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(str(v));
  return out;
}

Json tagged(const std::string& schema) {
  Json doc;
  doc["schema"] = schema;
  return doc;
}

}  // namespace

Json to_json(const Enclosure& e) {
  Json out;
  if (e.is_exact()) {
    out["exact"] = str(*e.exact_value());
  }
  out["lo"] = e.lo_string(kEnclosureDigits);
  out["hi"] = e.hi_string(kEnclosureDigits);
  out["bits"] = e.precision_bits();
  return out;
}

Json to_json(const WindowCertificate& c) {
  Json out;
  out["floors"] = strings(c.floors);
  Json fr = Json::array();
  for (const auto& e : c.frac_bounds) fr.push_back(to_json(e));
  out["fracs"] = fr;
  out["kth_bound"] = to_json(c.kth_bound);
  out["ell"] = c.ell ? Json(*c.ell) : Json(nullptr);
  out["flags"] = {{"c0", c.c0}, {"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3},
                  {"c1_strong", c.c1_strong}};
  out["all_hold"] = c.all_hold();
  return out;
}

Json to_json(const KwiseResult& r) {
  Json out;
  out["coprime"] = r.coprime;
  if (!r.coprime) {
    Json idx = Json::array();
    for (auto i : r.failing_indices) idx.push_back(i + 1);
    out["failing_subset"] = {{"offsets", idx},
                             {"values", strings(r.failing_values)},
                             {"gcd", str(r.failing_gcd)}};
  } else {
    out["failing_subset"] = nullptr;
  }
  return out;
}

Json to_json(const VandermondeDiagnostic& d) {
  return Json{{"nodes", strings(d.nodes)},     {"floors", strings(d.floors)},
              {"gcd", str(d.gcd)},             {"prime", str(d.prime)},
              {"prime_certain", d.prime_certain}, {"p_le_H", d.p_le_H},
              {"det", str(d.det)},             {"p_divides_det", d.p_divides_det}};
}

Json to_json(const ConstantLadder& L) {
  Json out;
  out["k"] = L.k;
  out["H"] = L.H;
  out["modulus"] = str(L.modulus);
  out["C"] = strings(L.C);
  out["D"] = strings(L.D);
  out["source"] = L.source == LadderSource::defaults ? "default" : "override";
  return out;
}

Json to_json(const LadderTrace& t) {
  Json out;
  out["m"] = t.m;
  out["stage"] = t.stage;
  for (const auto& [key, v] : {std::pair{"R", &t.R}, {"b", &t.b}, {"r", &t.r}, {"r0", &t.r0},
                               {"t", &t.t}, {"s", &t.s}, {"n1", &t.n1}}) {
    out[key] = str(*v);
  }
  Json inc = Json::array();
  for (const auto& s : t.increments) {
    inc.push_back({{"h", str(s.h)}, {"increment", to_json(s.increment)}});
  }
  out["increments"] = inc;
  Json probes = Json::array();
  for (const auto& p : t.probes) {
    probes.push_back({{"h", str(p.h)}, {"value", to_json(p.value)}, {"sign", p.sign}});
  }
  out["probes"] = probes;
  return out;
}

Json to_json(const SeedResult& s) {
  return Json{{"x0", str(s.x0)},
              {"s", s.s},
              {"target_floor", str(s.target_floor)},
              {"threshold", str(s.threshold)},
              {"n", str(s.n)},
              {"frac", to_json(s.frac)},
              {"evaluations", s.evaluations}};
}

Json eval_json(const PowerSumExpr& f, const mpz_class& x, int order, const FloorFrac& ff,
               const Enclosure& value) {
  Json doc = tagged("kwc.eval/1");
  doc["f"] = f.to_string();
  doc["x"] = str(x);
  doc["order"] = order;
  doc["value"] = to_json(value);
  doc["floor"] = str(ff.floor_part);
  doc["frac"] = to_json(ff.frac);
  doc["exact"] = ff.exact;
  doc["precision_bits"] = ff.precision_bits;
  return doc;
}

Json hypotheses_json(const PowerSumExpr& f, const HypothesisReport& r) {
  Json doc = tagged("kwc.hypotheses/1");
  doc["f"] = f.to_string();
  doc["k"] = r.k;
  doc["vanishing"] = r.vanishing_kth;
  doc["unbounded"] = r.unbounded_k_minus_1;
  doc["witness_exponent"] = r.witness_exponent ? Json(str(*r.witness_exponent)) : Json(nullptr);
  doc["satisfied"] = r.satisfied();
  return doc;
}

Json verification_json(const VerificationReport& r) {
  Json doc = tagged("kwc.verification/1");
  doc["f"] = r.f.to_string();
  doc["n"] = str(r.n);
  doc["k"] = r.k;
  doc["H"] = r.H;
  doc["floors"] = strings(r.window_floors);
  doc["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  doc["reconstruction_matches"] =
      r.reconstruction_matches ? Json(*r.reconstruction_matches) : Json(nullptr);
  doc["kwise"] = r.kwise ? to_json(*r.kwise) : Json(nullptr);
  doc["kwise_coprime"] = r.kwise_coprime();
  doc["small_primes_ok"] = r.small_primes_ok;
  doc["diagnostics"] = r.diagnostic ? to_json(*r.diagnostic) : Json(nullptr);
  return doc;
}

Json scan_json(const PowerSumExpr& f, int k, std::uint64_t H, const mpz_class& lo,
               const mpz_class& hi, ScanMode mode, const ScanResult& r) {
  Json doc = tagged("kwc.scan/1");
  doc["f"] = f.to_string();
  doc["k"] = k;
  doc["H"] = H;
  doc["range"] = {str(lo), str(hi)};
  doc["mode"] = mode == ScanMode::kwise ? "kwise" : "pairwise";
  doc["scanned"] = r.scanned;
  doc["witnesses"] = strings(r.witnesses);
  Json und = Json::array();
  for (const auto& u : r.undecided) und.push_back({{"n", str(u.n)}, {"reason", u.reason}});
  doc["undecided"] = und;
  Json rej = Json::array();
  for (const auto& x : r.rejections) {
    rej.push_back({{"n", str(x.n)}, {"offsets", x.failing_offsets}, {"gcd", str(x.gcd)}});
  }
  doc["rejections"] = rej;
  return doc;
}

Json ladder_json(const ConstantLadder& L, const std::vector<std::string>& violations) {
  Json doc = tagged("kwc.ladder/1");
  doc["constants"] = to_json(L);
  doc["admissible"] = violations.empty();
  doc["violations"] = violations;
  return doc;
}

Json witness_json(const WitnessResult& w, bool with_trace) {
  Json doc = tagged("kwc.witness/1");
  doc["f"] = w.certificate.f.to_string();
  doc["k"] = w.certificate.k;
  doc["H"] = w.certificate.H;
  doc["n0"] = str(w.n0);
  doc["n0_bits"] = mpz_sizeinbase(w.n0.get_mpz_t(), 2);
  doc["constants"] = to_json(w.ladder);
  doc["seed"] = to_json(w.seed);
  doc["certificate"] = to_json(w.certificate);
  doc["displacement"] = str(w.displacement);
  doc["drift"] = to_json(w.drift);
  Json steps = Json::array();
  for (const auto& t : w.steps) {
    Json s = to_json(t);
    if (!with_trace) s.erase("probes");
    steps.push_back(s);
  }
  doc["steps"] = steps;
  return doc;
}

Json density_json(const std::vector<DensityReport>& rows) {
  Json doc = tagged("kwc.density/1");
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["experiment"] = r.experiment;
    row["parameters"] = r.parameters;
    row["N"] = r.N;
    row["count"] = str(r.count);
    row["total"] = str(r.total);
    row["frequency"] = str(r.frequency);
    row["frequency_decimal"] = r.frequency.get_d();
    row["zeta_s"] = r.zeta_s;
    row["target"] = to_json(r.target);
    row["deviation"] = r.deviation;
    row["cross_check"] = r.cross_check ? Json(str(*r.cross_check)) : Json(nullptr);
    arr.push_back(row);
  }
  doc["rows"] = arr;
  return doc;
}

std::string density_csv(const std::vector<DensityReport>& rows) {
  std::ostringstream out;
  out << "experiment,parameters,N,count,total,frequency,target_lo,target_hi,deviation\n";
  for (const auto& r : rows) {
    out << r.experiment << ",\"" << r.parameters << "\"," << r.N << ',' << r.count << ','
        << r.total << ',' << r.frequency.get_d() << ',' << r.target.lo_string(12) << ','
        << r.target.hi_string(12) << ',' << r.deviation << '\n';
  }
  return out.str();
}

Json banach_json(const BanachSet& set,
                 const std::vector<std::pair<std::uint64_t, mpq_class>>& density,
                 const std::optional<CrossBlockResult>& cross) {
  Json doc = tagged("kwc.banach/1");
  doc["f"] = set.f.to_string();
  doc["k"] = set.k;
  Json blocks = Json::array();
  for (const auto& b : set.blocks) {
    blocks.push_back({{"n", str(b.n)}, {"H", b.H}, {"certified", b.certified}});
  }
  doc["blocks"] = blocks;
  Json dens = Json::array();
  for (const auto& [H, d] : density) dens.push_back({{"window", H}, {"estimate", str(d)}});
  doc["density"] = dens;
  if (cross) {
    doc["cross_block"] = {{"holds", cross->holds},
                          {"exhaustive", cross->exhaustive},
                          {"subsets_checked", cross->subsets_checked},
                          {"failing_elements", strings(cross->failing_elements)},
                          {"failing_gcd", cross->holds ? Json(nullptr)
                                                       : Json(str(cross->failing_gcd))}};
  } else {
    doc["cross_block"] = nullptr;
  }
  return doc;
}

BanachSet banach_from_json(const Json& doc) {
  try {
    if (doc.at("schema").get<std::string>() != "kwc.banach/1") {
      throw InputError("expected schema kwc.banach/1");
    }
    BanachSet set;
    set.f = parse_function(doc.at("f").get<std::string>());
    set.k = doc.at("k").get<int>();
    for (const auto& b : doc.at("blocks")) {
      BanachBlock block;
      block.n = mpz_class(b.at("n").get<std::string>());
      block.H = b.at("H").get<std::uint64_t>();
      block.certified = b.at("certified").get<bool>();
      set.blocks.push_back(block);
    }
    return set;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed banach document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("malformed integer in banach document: ") + e.what());
  }
}

Json error_json(const std::string& kind, const std::string& message) {
  Json doc = tagged("kwc.error/1");
  doc["kind"] = kind;
  doc["message"] = message;
  return doc;
}

}  // namespace kwc
