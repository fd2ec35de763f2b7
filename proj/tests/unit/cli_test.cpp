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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kwc/cli.hpp"
#include "kwc/errors.hpp"
#include "kwc/report_json.hpp"

namespace kwc {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "kwc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json parsed(const Outcome& o) { return Json::parse(o.out); }

TEST(Cli, CertifyCoprimeWindow) {
  auto o = call({"certify", "--f", "x^1.5", "--k", "2", "--H", "3", "--n", "2"});
  EXPECT_EQ(o.code, cli::kOk);
  auto doc = parsed(o);
  EXPECT_EQ(doc["schema"], "kwc.verification/1");
  EXPECT_EQ(doc["kwise_coprime"], true);
  EXPECT_EQ(doc["floors"], Json({"5", "8", "11"}));
}

TEST(Cli, ScanSquarePlusReciprocalIsEmpty) {
  auto o = call({"scan", "--f", "x^2+1/x", "--k", "2", "--H", "4", "--range", "2:1000"});
  EXPECT_EQ(o.code, cli::kFalse);
  auto doc = parsed(o);
  EXPECT_TRUE(doc["witnesses"].empty());
  EXPECT_EQ(doc["scanned"], 999);
}

TEST(Cli, HypothesesSquarePlusReciprocal) {
  auto o = call({"hypotheses", "--f", "x^2+1/x", "--k", "3"});
  EXPECT_EQ(o.code, cli::kFalse);
  auto doc = parsed(o);
  EXPECT_EQ(doc["vanishing"], true);
  EXPECT_EQ(doc["unbounded"], false);
  EXPECT_EQ(call({"hypotheses", "--f", "x^(3/2)", "--k", "2"}).code, cli::kOk);
}

TEST(Cli, ExitCodesAndErrorDocuments) {
  auto bad = call({"eval", "--f", "x^^", "--x", "3"});
  EXPECT_EQ(bad.code, cli::kInputError);
  EXPECT_EQ(Json::parse(bad.err)["schema"], "kwc.error/1");
  EXPECT_EQ(Json::parse(bad.err)["kind"], "parse_error");
  EXPECT_EQ(call({"eval", "--f", "x", "--x", "0"}).code, cli::kInputError);
  EXPECT_EQ(call({"scan", "--f", "x", "--k", "2"}).code, cli::kInputError);
  EXPECT_EQ(call({"nonsense"}).code, cli::kInputError);
  EXPECT_EQ(call({"scan", "--f", "x", "--k", "2", "--H", "2", "--range", "5:1"}).code,
            cli::kInputError);
  // sqrt(10^40 - 1) sits just below an integer
  auto und = call({"eval", "--f", "x^(1/2)", "--x", "9999999999999999999999999999999999999999",
                   "--precision-cap", "64"});
  EXPECT_EQ(und.code, cli::kUndecided);
  EXPECT_EQ(Json::parse(und.err)["kind"], "undecidable");
  EXPECT_EQ(call({"witness", "--f", "x^2+1/x", "--k", "3", "--H", "3"}).code, cli::kFalse);
  EXPECT_EQ(call({"witness", "--f", "x^(3/2)", "--k", "2", "--H", "2", "--constants", "D2=2"}).code,
            cli::kInputError);
}

TEST(Cli, EnvironmentAndConfigFile) {
  const std::string x = "9999999999999999999999999999999999999999";
  ::setenv("KWC_PRECISION_CAP", "64", 1);
  EXPECT_EQ(call({"eval", "--f", "x^(1/2)", "--x", x}).code, cli::kUndecided);
  EXPECT_EQ(call({"eval", "--f", "x^(1/2)", "--x", x, "--precision-cap", "4096"}).code, cli::kOk);
  ::unsetenv("KWC_PRECISION_CAP");

  const std::string path = ::testing::TempDir() + "kwc_cli_test.ini";
  {
    std::ofstream cfg(path);
    cfg << "# comment\nformat=csv\n[eval]\nf=x^2\nx=7\n";
  }
  auto from_file = call({"--config", path, "eval"});
  EXPECT_EQ(from_file.code, cli::kOk);
  EXPECT_NE(from_file.out.find("floor,49"), std::string::npos);
  auto flag_wins = call({"--config", path, "eval", "--x", "3", "--format", "json"});
  EXPECT_EQ(parsed(flag_wins)["floor"], "9");
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args = {"scan", "--f", "x^(3/2)", "--k", "2", "--H", "3",
                                         "--range", "1:300", "--jobs", "3"};
  auto a = call(args);
  auto b = call(args);
  EXPECT_EQ(a.out, b.out);
  auto single = call({"scan", "--f", "x^(3/2)", "--k", "2", "--H", "3", "--range", "1:300"});
  EXPECT_EQ(parsed(a)["witnesses"], parsed(single)["witnesses"]);
  EXPECT_EQ(parsed(a)["witnesses"][0], "2");
}

TEST(Cli, LadderAndWitness) {
  auto ok = call({"ladder", "--k", "2", "--H", "2", "--constants",
                  "C0=2^12,C1=2^15,D0=8,D1=2^11,D2=2^67"});
  EXPECT_EQ(ok.code, cli::kOk);
  EXPECT_EQ(parsed(ok)["admissible"], true);
  auto bad = call({"ladder", "--k", "2", "--H", "2", "--constants", "D2=2"});
  EXPECT_EQ(bad.code, cli::kFalse);
  EXPECT_FALSE(parsed(bad)["violations"].empty());

  auto w = call({"witness", "--f", "x^(3/2)", "--k", "2", "--H", "2", "--trace"});
  ASSERT_EQ(w.code, cli::kOk) << w.err;
  auto doc = parsed(w);
  EXPECT_EQ(doc["certificate"]["all_hold"], true);
  EXPECT_EQ(doc["n0_bits"], 1045);
  EXPECT_FALSE(doc["steps"][0]["probes"].empty());
  auto v = call({"certify", "--f", "x^(3/2)", "--k", "2", "--H", "2", "--n",
                 doc["n0"].get<std::string>()});
  EXPECT_EQ(v.code, cli::kOk);
  EXPECT_EQ(parsed(v)["certificate"]["all_hold"], true);
}

TEST(Cli, DensityTable) {
  auto o = call({"density", "--experiment", "floor-power", "--c", "3/2", "--N", "5,100"});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  auto doc = parsed(o);
  ASSERT_EQ(doc["rows"].size(), 2u);
  EXPECT_EQ(doc["rows"][0]["frequency"], "3/5");
  auto csv = call({"density", "--experiment", "dirichlet", "--N", "100", "--format", "csv"});
  EXPECT_NE(csv.out.find("dirichlet,\"\",100,6087,10000"), std::string::npos);
  auto beatty = call({"density", "--experiment", "beatty", "--alpha", "sqrt(3)", "--N", "100"});
  EXPECT_EQ(beatty.code, cli::kOk);
  EXPECT_EQ(call({"density", "--experiment", "beatty", "--alpha", "x", "--N", "10"}).code,
            cli::kInputError);
}

TEST(Cli, BanachRoundTrip) {
  auto o = call({"banach", "--provider", "synthetic", "--r-max", "4", "--windows", "1,5,9"});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  auto doc = parsed(o);
  EXPECT_EQ(doc["cross_block"]["holds"], true);
  BanachSet set = banach_from_json(doc);
  ASSERT_EQ(set.blocks.size(), 4u);
  auto again = banach_json(set, {{1, banach_density_estimate(set, 1)},
                                 {5, banach_density_estimate(set, 5)},
                                 {9, banach_density_estimate(set, 9)}},
                           std::nullopt);
  EXPECT_EQ(again["blocks"], doc["blocks"]);
  EXPECT_EQ(again["density"], doc["density"]);
  EXPECT_EQ(again["f"], doc["f"]);
  EXPECT_THROW(banach_from_json(Json::parse("{\"schema\":\"kwc.scan/1\"}")), InputError);
}

}  // namespace
}  // namespace kwc
