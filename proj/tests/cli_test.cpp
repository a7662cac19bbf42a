// Copyright 2026 The asrscale Authors. All Rights Reserved.
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
#include <filesystem>
#include <fstream>

#include "asrscale/runs.hpp"
#include "asrscale/scaling.hpp"
#include "asrscale/store.hpp"
#include "cli.hpp"

namespace asrscale::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("asrscale-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ::unsetenv("ASRSCALE_STORE");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }

  static std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  fs::path dir_;
};

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

TEST_F(CliTest, FitFixtureSeries) {
  const auto r = run_command({"fit", "--input", "fixture:table3:S5-preliminary"});
  EXPECT_EQ(r.exit_code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "-0.1811")) << r.out;
  EXPECT_TRUE(contains(r.out, "28.27")) << r.out;
  EXPECT_TRUE(contains(r.out, "r2_log"));
}

TEST_F(CliTest, FitJsonFeedsPlan) {
  const auto fit = run_command({"fit", "--input", "fixture:table3:S5-preliminary", "--format", "json"});
  ASSERT_EQ(fit.exit_code, kExitOk) << fit.err;
  const PowerLawFit parsed = power_law_fit_from_json(fit.out);
  EXPECT_NEAR(parsed.alpha, -0.181136, 1e-6);
  const std::string path = write("fit.json", fit.out);
  const auto plan = run_command({"plan", "--target-cer", "8.0", "--fit", path});
  EXPECT_EQ(plan.exit_code, kExitOk) << plan.err;
  EXPECT_FALSE(plan.out.empty());
  const auto unreachable = run_command({"plan", "--target-cer", "0", "--fit", path});
  EXPECT_EQ(unreachable.exit_code, kExitDomain);
}

TEST_F(CliTest, FitMethodsAndSaturating) {
  EXPECT_EQ(run_command({"fit", "--input", "fixture:table4", "--method", "nonlinear"}).exit_code, kExitOk);
  EXPECT_EQ(run_command({"fit", "--input", "fixture:table3", "--saturating"}).exit_code, kExitOk);
  EXPECT_EQ(run_command({"fit", "--input", "fixture:table3", "--method", "cubic"}).exit_code, kExitUsage);
}

TEST_F(CliTest, DegenerateFitExitsOne) {
  const std::string csv = write("flat.csv", std::string(kRunsCsvHeader) +
                                                "\na,X,m,1,T,5,10\nb,X,m,2,T,5,20\nc,X,m,3,T,5,30\n");
  const auto r = run_command({"fit", "--input", csv, "--saturating"});
  EXPECT_EQ(r.exit_code, kExitDomain);
  EXPECT_TRUE(contains(r.err, "degenerate")) << r.err;
}

TEST_F(CliTest, Predict) {
  const auto r = run_command({"predict", "--alpha", "-0.18", "--beta", "28.24", "--budget", "948.26"});
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.out, "8.22\n");
  EXPECT_EQ(run_command({"predict", "--alpha", "-0.18", "--beta", "28.24", "--budget", "0"}).exit_code, kExitUsage);
}

TEST_F(CliTest, ChartEmptyInput) {
  const std::string empty = write("empty.csv", "");
  const auto r = run_command({"chart", "--input", empty, "--out", (dir_ / "x.svg").string()});
  EXPECT_EQ(r.exit_code, kExitUsage);
  EXPECT_TRUE(contains(r.err, "no series")) << r.err;
}

TEST_F(CliTest, ChartIsDeterministic) {
  const std::string a = (dir_ / "a.svg").string(), b = (dir_ / "b.svg").string();
  ASSERT_EQ(run_command({"chart", "--input", "fixture:table3", "--out", a}).exit_code, kExitOk);
  ASSERT_EQ(run_command({"chart", "--input", "fixture:table3", "--out", b}).exit_code, kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_TRUE(contains(slurp(a), "class=\"fit\""));
}

TEST_F(CliTest, ParetoAndCompare) {
  const auto p = run_command({"pareto", "--input", "fixture:table1", "--format", "csv"});
  ASSERT_EQ(p.exit_code, kExitOk) << p.err;
  EXPECT_TRUE(contains(p.out, "\nS1,"));
  EXPECT_TRUE(contains(p.out, "\nS4,"));
  EXPECT_TRUE(contains(p.out, "\nS5,"));
  EXPECT_FALSE(contains(p.out, "\nS2,"));

  const auto c = run_command({"compare", "--baseline", "S3", "--input", "fixture:table3"});
  EXPECT_EQ(c.exit_code, kExitOk);
  EXPECT_EQ(run_command({"compare", "--baseline", "S9", "--input", "fixture:table3"}).exit_code, kExitUsage);
}

TEST_F(CliTest, IngestListAndReadBack) {
  const std::string store = (dir_ / "runs.ndjson").string();
  const std::string csv = write("t3.csv", write_runs_csv(load_fixtures(3)));
  const auto in = run_command({"ingest", csv, "--store", store});
  ASSERT_EQ(in.exit_code, kExitOk) << in.err;
  EXPECT_EQ(RunStore(store).list().size(), 24u);

  const auto again = run_command({"ingest", csv, "--store", store});
  EXPECT_EQ(again.exit_code, kExitDomain);

  const auto list = run_command({"list", "--store", store, "--strategy", "S5-preliminary", "--format", "csv"});
  ASSERT_EQ(list.exit_code, kExitOk) << list.err;
  const auto reparsed = parse_runs_csv(list.out);
  EXPECT_EQ(reparsed.size(), 4u);

  ::setenv("ASRSCALE_STORE", store.c_str(), 1);
  const auto fit = run_command({"fit", "--input", "store:S5-preliminary"});
  EXPECT_EQ(fit.exit_code, kExitOk) << fit.err;
  EXPECT_TRUE(contains(fit.out, "-0.1811"));
  ::unsetenv("ASRSCALE_STORE");
}

TEST_F(CliTest, FixturesCsvReingests) {
  const auto r = run_command({"fixtures", "2", "--format", "csv"});
  ASSERT_EQ(r.exit_code, kExitOk) << r.err;
  auto parsed = parse_runs_csv(r.out, RunSource::fixture(2));
  EXPECT_EQ(parsed, load_fixtures(2));
  EXPECT_EQ(run_command({"fixtures", "9"}).exit_code, kExitUsage);
}

TEST_F(CliTest, Cer) {
  const std::string ref = write("ref.tsv", "u1\tab\nu2\tabcd\n");
  const std::string hyp = write("hyp.tsv", "u2\tbcd\nu1\tab\n");
  const auto r = run_command({"cer", "--ref", ref, "--hyp", hyp});
  EXPECT_EQ(r.exit_code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "16.67")) << r.out;

  const std::string stray = write("stray.tsv", "u1\tab\nu3\tx\n");
  EXPECT_EQ(run_command({"cer", "--ref", ref, "--hyp", stray}).exit_code, kExitUsage);
}

TEST_F(CliTest, ConvergeAndDecompose) {
  const std::string curve = write("curve.csv",
                                  "cumulative_flops,avg_cer,stage_kind\n"
                                  "10,20,alignment\n20,12,alignment\n30,10,alignment\n"
                                  "40,9.8,alignment\n50,9.79,alignment\n");
  const auto c = run_command({"converge", "--curve", curve, "--format", "csv"});
  EXPECT_EQ(c.exit_code, kExitOk) << c.err;
  EXPECT_EQ(c.out, "level,checkpoint_index\npreliminary,3\nfull,4\n");

  const auto d = run_command({"decompose", "--input", "fixture:table3:S4", "--format", "csv"});
  EXPECT_EQ(d.exit_code, kExitOk) << d.err;
  EXPECT_TRUE(contains(d.out, "358.8")) << d.out;
}

TEST_F(CliTest, FlopsDefaultConfig) {
  const auto r = run_command({"flops", "--strategy", "S1"});
  EXPECT_EQ(r.exit_code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "S1"));
  EXPECT_EQ(run_command({"flops", "--strategy", "S9"}).exit_code, kExitUsage);
}

TEST_F(CliTest, UsageErrors) {
  const auto none = run_command({});
  EXPECT_EQ(none.exit_code, kExitUsage);
  EXPECT_TRUE(contains(none.err, "Usage"));
  const auto unknown = run_command({"frobnicate"});
  EXPECT_EQ(unknown.exit_code, kExitUsage);
  EXPECT_TRUE(contains(unknown.err, "Usage"));
  EXPECT_EQ(run_command({"fit", "--input", "fixture:table3", "--bogus"}).exit_code, kExitUsage);
  EXPECT_EQ(run_command({"fit"}).exit_code, kExitUsage);
  EXPECT_EQ(run_command({"--help"}).exit_code, kExitOk);
  const std::string bad = write("bad.csv", std::string(kRunsCsvHeader) + "\nr,S,m,1,T,abc,1\n");
  const auto parse = run_command({"pareto", "--input", bad});
  EXPECT_EQ(parse.exit_code, kExitUsage);
  EXPECT_TRUE(contains(parse.err, "line 2")) << parse.err;
}

}  // namespace
}  // namespace asrscale::cli
