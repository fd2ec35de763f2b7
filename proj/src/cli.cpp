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

#include "kwc/cli.hpp"

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kwc/banach.hpp"
#include "kwc/certificate.hpp"
#include "kwc/density.hpp"
#include "kwc/errors.hpp"
#include "kwc/ladder.hpp"
#include "kwc/report_json.hpp"
#include "kwc/scan.hpp"

namespace kwc::cli {
namespace {

enum class Format { json, csv, human };

struct Settings {
  Format format = Format::json;
  long precision_cap = EvalConfig{}.precision_cap;
  long initial_bits = EvalConfig{}.initial_bits;

  EvalConfig eval() const {
    EvalConfig cfg;
    cfg.precision_cap = precision_cap;
    cfg.initial_bits = initial_bits;
    return cfg;
  }
};

mpz_class parse_integer(const std::string& text, const std::string& what) {
  mpz_class v;
  if (text.empty() || v.set_str(text, 10) != 0) {
    throw InputError(what + " must be a decimal integer, got '" + text + "'");
  }
  return v;
}

std::pair<mpz_class, mpz_class> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("range must look like LO:HI");
  auto lo = parse_integer(text.substr(0, colon), "range start");
  auto hi = parse_integer(text.substr(colon + 1), "range end");
  if (lo < 1 || hi < lo) throw InputError("range needs 1 <= LO <= HI");
  return {lo, hi};
}

// "3/2" or "1.5", read through the exponent grammar.
mpq_class parse_rational(const std::string& text) {
  const PowerSumExpr e = parse_function("x^(" + text + ")");
  if (e.terms().size() != 1) throw InputError("not a rational: " + text);
  return e.terms()[0].exponent;
}

Surd parse_constant(const std::string& text) {
  const PowerSumExpr e = parse_function(text);
  if (e.terms().size() != 1 || e.terms()[0].exponent != 0) {
    throw InputError("expected a constant such as sqrt(2), got '" + text + "'");
  }
  return e.terms()[0].coefficient;
}

std::vector<std::uint64_t> parse_sizes(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const mpz_class v = parse_integer(item, "N");
    if (v < 1 || !v.fits_ulong_p()) throw InputError("N out of range: " + item);
    out.push_back(v.get_ui());
  }
  if (out.empty()) throw InputError("need at least one N");
  return out;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

void render_human(const Json& v, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = v.begin(); it != v.end(); ++it) {
    const Json& x = it.value();
    // array items print as "-" lines; objects and arrays nest by two spaces
    const std::string key = v.is_object() ? it.key() + ":" : "-";
    const bool flat_array = x.is_array() && std::none_of(x.begin(), x.end(), [](const Json& y) {
      return y.is_structured() || scalar_text(y).find(' ') != std::string::npos;
    });
    if (flat_array) {
      out << pad << key;
      for (const auto& y : x) out << ' ' << scalar_text(y);
      out << '\n';
    } else if (x.is_structured()) {
      out << pad << key << '\n';
      render_human(x, out, indent + 2);
    } else {
      out << pad << key << ' ' << scalar_text(x) << '\n';
    }
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void flatten_csv(const Json& v, const std::string& path, std::ostream& out) {
  if (!v.is_structured()) {
    out << csv_field(path) << ',' << csv_field(scalar_text(v)) << '\n';
    return;
  }
  std::size_t i = 0;
  for (auto it = v.begin(); it != v.end(); ++it, ++i) {
    const std::string key = v.is_object() ? it.key() : std::to_string(i);
    flatten_csv(it.value(), path.empty() ? key : path + "." + key, out);
  }
}

void emit(const Json& doc, const Settings& s, std::ostream& out,
          const std::function<std::string()>& csv = nullptr) {
  switch (s.format) {
    case Format::json:
      out << doc.dump(2) << '\n';
      break;
    case Format::csv:
      if (csv) {
        out << csv();
      } else {
        out << "key,value\n";
        flatten_csv(doc, "", out);
      }
      break;
    case Format::human:
      render_human(doc, out, 0);
      break;
  }
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const InputError*>(&e) != nullptr) return kInputError;
  if (dynamic_cast<const Undecidable*>(&e) != nullptr) return kUndecided;
  if (dynamic_cast<const InternalContradiction*>(&e) != nullptr) return kUndecided;
  return kFalse;  // HypothesisFailure, CertificateRejected
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified search for windows of k-wise coprime floors of power sums"};
  app.name("kwc");
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "Read KEY=VALUE settings from FILE (flags take precedence)");

  Settings settings;
  std::string format_text = "json";
  app.add_option("--format", format_text, "Output format")
      ->check(CLI::IsMember({"json", "csv", "human"}))
      ->capture_default_str();
  app.add_option("--precision-cap", settings.precision_cap, "Largest working precision in bits")
      ->envname("KWC_PRECISION_CAP")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--initial-bits", settings.initial_bits, "Starting working precision in bits")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string f_text;
  std::vector<std::string> f_list;
  int k = 2;
  std::uint64_t H = 0;
  std::string n_text, x_text, range_text = "1:100", mode = "kwise", constants, search = "binary";
  std::string experiment, alpha_text = "sqrt(2)", c_text = "3/2", sizes = "1000";
  int order = 0;
  unsigned jobs = 1;
  bool trace = false, rejections = false;
  std::uint64_t r_max = 1, H1 = 0, samples = 1000, seed = 1;
  std::string provider = "pipeline", windows;
  int m = 200;

  auto function_option = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--f", f_text, "Power sum, e.g. \"x^(3/2)\" or \"x^2+1/x\"");
    if (required) o->required();
  };

  auto* eval = app.add_subcommand("eval", "Certified value, floor and fraction of f^(order)(x)");
  function_option(eval, true);
  eval->add_option("--x", x_text, "Integer argument >= 1")->required();
  eval->add_option("--order", order, "Derivative order")->check(CLI::NonNegativeNumber);

  auto* hyp = app.add_subcommand("hypotheses", "Check the growth hypotheses for f and k");
  function_option(hyp, true);
  hyp->add_option("--k", k, "Order k >= 2")->required();

  auto* scan = app.add_subcommand("scan", "Exhaustive window scan over a range of n");
  function_option(scan, true);
  scan->add_option("--k", k, "Coprimality order")->required();
  scan->add_option("--H", H, "Window length")->required();
  scan->add_option("--range", range_text, "LO:HI, inclusive")->capture_default_str();
  scan->add_option("--mode", mode, "kwise or pairwise")
      ->check(CLI::IsMember({"kwise", "pairwise"}))
      ->capture_default_str();
  scan->add_option("--jobs", jobs, "Parallel shards")->check(CLI::PositiveNumber);
  scan->add_flag("--rejections", rejections, "Record the failing subset of every rejected n");

  auto* certify = app.add_subcommand("certify", "Check the window certificate at n");
  function_option(certify, true);
  certify->add_option("--k", k, "Coprimality order")->required();
  certify->add_option("--H", H, "Window length")->required();
  certify->add_option("--n", n_text, "Window start (window is n+1..n+H)")->required();

  auto* ladder = app.add_subcommand("ladder", "Show a constant ladder and its admissibility");
  ladder->add_option("--k", k, "Coprimality order")->required();
  ladder->add_option("--H", H, "Window length")->required();
  ladder->add_option("--constants", constants, "Overrides, e.g. C0=2^12,D2=2^67");

  auto* witness = app.add_subcommand("witness", "Run the constructive pipeline");
  function_option(witness, true);
  witness->add_option("--k", k, "Coprimality order")->required();
  witness->add_option("--H", H, "Window length")->required();
  witness->add_option("--constants", constants, "Overrides, e.g. C0=2^12,D2=2^67");
  witness->add_option("--search", search, "binary or linear root search")
      ->check(CLI::IsMember({"binary", "linear"}))
      ->capture_default_str();
  witness->add_flag("--trace", trace, "Include every probed a_h enclosure");

  auto* density = app.add_subcommand("density", "Coprimality frequency experiments");
  density->add_option("--experiment", experiment, "dirichlet, beatty, floor-power or multi")
      ->check(CLI::IsMember({"dirichlet", "beatty", "floor-power", "multi"}))
      ->required();
  density->add_option("--N", sizes, "Comma separated sample sizes")->capture_default_str();
  density->add_option("--alpha", alpha_text, "Beatty slope, e.g. sqrt(2)")->capture_default_str();
  density->add_option("--c", c_text, "Floor-power exponent, e.g. 3/2")->capture_default_str();
  density->add_option("--f", f_list, "Functions for the multi experiment (repeatable)");

  auto* banach = app.add_subcommand("banach", "Build blocks of a density-one coprime set");
  function_option(banach, false);
  banach->add_option("--k", k, "Coprimality order")->capture_default_str();
  banach->add_option("--r-max", r_max, "Number of blocks")->capture_default_str();
  banach->add_option("--H1", H1, "First window length (default k)");
  banach->add_option("--provider", provider, "pipeline or synthetic")
      ->check(CLI::IsMember({"pipeline", "synthetic"}))
      ->capture_default_str();
  banach->add_option("--m", m, "Synthetic provider: f = 1 + x/2^m")->capture_default_str();
  banach->add_option("--constants", constants, "Pipeline provider overrides");
  banach->add_option("--windows", windows, "Comma separated density windows (default 1..max H)");
  banach->add_option("--samples", samples, "Sampled subsets when not exhaustive")
      ->capture_default_str();
  banach->add_option("--seed", seed, "Sampling seed")->capture_default_str();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << error_json("usage", e.what()).dump() << '\n';
    return kInputError;
  }
  settings.format = format_text == "csv" ? Format::csv
                    : format_text == "human" ? Format::human
                                             : Format::json;
  const EvalConfig cfg = settings.eval();

  try {
    if (eval->parsed()) {
      const PowerSumExpr f = parse_function(f_text);
      const mpz_class x = parse_integer(x_text, "x");
      const FloorFrac ff = floor_frac(f, x, order, cfg);
      const Enclosure value = evaluate(differentiate(f, order), x, ff.precision_bits);
      emit(eval_json(f, x, order, ff, value), settings, out);
      return kOk;
    }
    if (hyp->parsed()) {
      const PowerSumExpr f = parse_function(f_text);
      const HypothesisReport r = check_hypotheses(f, k);
      emit(hypotheses_json(f, r), settings, out);
      return r.satisfied() ? kOk : kFalse;
    }
    if (scan->parsed()) {
      const PowerSumExpr f = parse_function(f_text);
      const auto [lo, hi] = parse_range(range_text);
      ScanOptions opts;
      opts.mode = mode == "pairwise" ? ScanMode::pairwise : ScanMode::kwise;
      opts.jobs = jobs;
      opts.record_rejections = rejections;
      const ScanResult r = brute_scan(f, k, H, lo, hi, opts, cfg);
      emit(scan_json(f, k, H, lo, hi, opts.mode, r), settings, out, [&] {
        std::string csv = "n\n";
        for (const auto& w : r.witnesses) csv += w.get_str() + "\n";
        return csv;
      });
      if (!r.undecided.empty() && r.witnesses.empty()) return kUndecided;
      return r.witnesses.empty() ? kFalse : kOk;
    }
    if (certify->parsed()) {
      const PowerSumExpr f = parse_function(f_text);
      const VerificationReport r = verify_window(f, parse_integer(n_text, "n"), k, H, cfg);
      emit(verification_json(r), settings, out, [&] {
        std::string csv = "h,floor\n";
        for (std::size_t h = 0; h < r.window_floors.size(); ++h) {
          csv += std::to_string(h + 1) + "," + r.window_floors[h].get_str() + "\n";
        }
        return csv;
      });
      return r.kwise_coprime() ? kOk : kFalse;
    }
    if (ladder->parsed()) {
      // Inadmissible constants are reported, not thrown.
      const ConstantLadder L = apply_overrides(k, H, parse_overrides(constants));
      const auto violations = admissibility_violations(L);
      emit(ladder_json(L, violations), settings, out);
      return violations.empty() ? kOk : kFalse;
    }
    if (witness->parsed()) {
      const PowerSumExpr f = parse_function(f_text);
      std::optional<ConstantLadder> L;
      if (!constants.empty()) L = build_constants(k, H, parse_overrides(constants));
      LadderOptions opts;
      opts.search = search == "linear" ? RootSearch::linear : RootSearch::binary;
      opts.trace = trace;
      const WitnessResult w = construct_witness(f, k, H, L, opts, cfg);
      emit(witness_json(w, trace), settings, out);
      return kOk;
    }
    if (density->parsed()) {
      ExperimentSpec spec;
      spec.name = experiment;
      if (experiment == "beatty") spec.alpha = parse_constant(alpha_text);
      if (experiment == "floor-power") spec.c = parse_rational(c_text);
      for (const auto& t : f_list) spec.functions.push_back(parse_function(t));
      CountOptions opts;
      opts.eval = cfg;
      const auto rows = density_table(spec, parse_sizes(sizes), opts);
      emit(density_json(rows), settings, out, [&] { return density_csv(rows); });
      return kOk;
    }
    if (banach->parsed()) {
      PowerSumExpr f;
      WitnessProvider source;
      if (provider == "synthetic") {
        if (!f_text.empty()) throw InputError("the synthetic provider fixes f; drop --f");
        f = synthetic_banach_function(m);
        source = synthetic_provider(m, k, cfg);
      } else {
        if (f_text.empty()) throw InputError("the pipeline provider needs --f");
        f = parse_function(f_text);
        source = pipeline_provider(parse_overrides(constants), {}, cfg);
      }
      const BanachSet set = build_banach_set(f, k, r_max, source, H1, cfg);
      std::vector<std::uint64_t> ws;
      if (!windows.empty()) {
        ws = parse_sizes(windows);
      } else {
        std::uint64_t top = 0;
        for (const auto& b : set.blocks) top = std::max(top, b.H);
        for (std::uint64_t w = 1; w <= top; ++w) ws.push_back(w);
      }
      std::vector<std::pair<std::uint64_t, mpq_class>> dens;
      for (auto w : ws) dens.emplace_back(w, banach_density_estimate(set, w));
      std::optional<CrossBlockResult> cross;
      if (set.element_count() >= static_cast<std::uint64_t>(k)) {
        cross = cross_block_check(set, k, samples, seed, 1, 100000, cfg);
      }
      emit(banach_json(set, dens, cross), settings, out);
      return !cross || cross->holds ? kOk : kFalse;
    }
  } catch (const Error& e) {
    err << error_json(e.kind(), e.what()).dump() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << error_json("internal", e.what()).dump() << '\n';
    return kUndecided;
  }
  return kInputError;
}

}  // namespace kwc::cli
