//
// Copyright 2026 The Anonkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "anonkit/runner.h"

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>

#include "anonkit/generator.h"
#include "anonkit/text_format.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace anonkit {
namespace {

std::string Tmp(const std::string& name) {
  return ::testing::TempDir() + "/anonkit_runner_" + name;
}

std::string ConfigPath() {
  return std::string(ANONKIT_SOURCE_DIR) + "/configs/pd_schema.json";
}

class RunnerTest : public ::testing::Test {
 protected:
  const AnonkitConfig config_ = DefaultPdConfig();
};

TEST_F(RunnerTest, KAnonOnSixRecords) {
  Dataset d = testing::LoadFixture("six_records.txt", config_.schema);
  MethodParams p;
  p.k = 3;
  absl::StatusOr<Evaluation> ev = Evaluate(d, config_, Method::kKAnon, p, {});
  ASSERT_TRUE(ev.ok()) << ev.status();
  EXPECT_EQ(ev->report.unique_count, 0u);
  EXPECT_EQ(ev->report.min_class_size, 3u);
  EXPECT_EQ(ev->report.mean_class_size, 3.0);
  EXPECT_EQ(*ev->report.worst_case_guess_rate, 1.0 / 3.0);
  ASSERT_EQ(ev->report.disclosure.size(), 3u);
  EXPECT_EQ(ev->report.disclosure[0].first, "charges_over_100k");
  EXPECT_EQ(*ev->report.disclosure[0].second, 0.75);
  EXPECT_EQ(*ev->report.disclosure[2].second, 1.0);
  EXPECT_GT(*ev->report.information_loss, 0.0);
}

TEST_F(RunnerTest, FullResolutionCoarseningIsIdentity) {
  absl::StatusOr<Dataset> d = GeneratePdLike(DefaultGeneratorSpec(500, 3));
  ASSERT_TRUE(d.ok());
  MethodParams p;
  for (std::size_t a : config_.schema.QuasiIdentifiers()) {
    const AttributeSchema& attr = config_.schema.attribute(a);
    p.resolutions[attr.name] = attr.DomainWidth();
  }
  absl::StatusOr<Evaluation> ev = Evaluate(*d, config_, Method::kCoarsen, p, {});
  ASSERT_TRUE(ev.ok()) << ev.status();
  absl::StatusOr<Evaluation> none = Evaluate(*d, config_, Method::kNone, {}, {});
  ASSERT_TRUE(none.ok());
  EXPECT_EQ(*ev->report.information_loss, 0.0);
  EXPECT_EQ(ev->report.unique_count, none->report.unique_count);
  EXPECT_EQ(ev->report.reid_risk, none->report.reid_risk);
  EXPECT_EQ(ev->output, *d);
}

TEST_F(RunnerTest, SafeHarborReportsResidual) {
  Dataset d = testing::LoadFixture("safe_harbor_adversarial.txt", config_.schema);
  absl::StatusOr<Evaluation> ev = Evaluate(d, config_, Method::kSafeHarbor, {}, {});
  ASSERT_TRUE(ev.ok()) << ev.status();
  EXPECT_EQ(*ev->report.residual_uniques, 1u);
  EXPECT_EQ(ev->report.unique_count, 1u);
}

TEST_F(RunnerTest, ParamsAreValidated) {
  EXPECT_FALSE(ValidateMethodParams(Method::kKAnon, {}).ok());
  MethodParams one;
  one.k = 1;
  EXPECT_FALSE(ValidateMethodParams(Method::kKAnonTClose, one).ok());
  EXPECT_FALSE(ValidateMethodParams(Method::kCoarsen, {}).ok());
  EXPECT_FALSE(ValidateMethodParams(Method::kRegenerate, {}).ok());
  EXPECT_TRUE(ValidateMethodParams(Method::kSafeHarbor, {}).ok());
  EXPECT_FALSE(ParseMethod("shuffle").ok());
}

TEST_F(RunnerTest, KAnonSweepRows) {
  absl::StatusOr<Dataset> d = GeneratePdLike(DefaultGeneratorSpec(2000, 4));
  absl::StatusOr<SweepGrid> grid =
      ParseSweepGrid(R"({"runs": [{"method": "k_anon", "k": [2, 3, 5, 10]}]})");
  ASSERT_TRUE(grid.ok()) << grid.status();
  std::vector<ReportRow> rows = Sweep(*d, config_, *grid);
  ASSERT_EQ(rows.size(), 4u);
  const std::vector<std::size_t> ks = {2, 3, 5, 10};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(rows[i].status, "ok");
    EXPECT_EQ(*rows[i].k, ks[i]);
    EXPECT_EQ(rows[i].unique_count, 0u);
    EXPECT_DOUBLE_EQ(*rows[i].worst_case_guess_rate, 1.0 / ks[i]);
  }
}

TEST_F(RunnerTest, RiskGrowsWithAttackerKnowledge) {
  absl::StatusOr<Dataset> d = GeneratePdLike(DefaultGeneratorSpec(5000, 8));
  absl::StatusOr<SweepGrid> grid = ParseSweepGrid(
      R"({"group_sets": [["census"], ["census", "spatial"],
                         ["census", "spatial", "temporal"]],
          "runs": [{"method": "none"}]})");
  ASSERT_TRUE(grid.ok()) << grid.status();
  std::vector<ReportRow> rows = Sweep(*d, config_, *grid);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].qi_groups, "census");
  EXPECT_EQ(rows[2].qi_groups, "spatial+census+temporal");
  EXPECT_LE(rows[0].reid_risk, rows[1].reid_risk);
  EXPECT_LE(rows[1].reid_risk, rows[2].reid_risk);
}

TEST_F(RunnerTest, EmptyGridAndFailingCells) {
  absl::StatusOr<Dataset> d = GeneratePdLike(DefaultGeneratorSpec(50, 8));
  absl::StatusOr<SweepGrid> empty = ParseSweepGrid("{}");
  ASSERT_TRUE(empty.ok());
  std::vector<ReportRow> none = Sweep(*d, config_, *empty);
  EXPECT_TRUE(none.empty());
  EXPECT_EQ(ReportCsv(config_, none), ReportHeader(config_));
  absl::StatusOr<SweepGrid> grid = ParseSweepGrid(
      R"({"runs": [{"method": "k_anon", "k": [100, 2]}]})");
  std::vector<ReportRow> rows = Sweep(*d, config_, *grid);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].status.rfind("error", 0), 0u);
  EXPECT_EQ(rows[1].status, "ok");
  const std::string csv = ReportCsv(config_, rows);
  const std::size_t cols = std::count(csv.begin(), csv.begin() + csv.find('\n'), ',');
  std::size_t start = csv.find('\n') + 1;
  while (start < csv.size()) {
    const std::size_t end = csv.find('\n', start);
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin() + start, csv.begin() + end, ',')),
              cols);
    start = end + 1;
  }
  EXPECT_FALSE(ParseSweepGrid(R"({"runs": [{"method": "regenerate"}]})").ok());
  EXPECT_FALSE(ParseSweepGrid(R"({"runs": [{"method": "k_anon", "k": [-2]}]})").ok());
  EXPECT_FALSE(ParseSweepGrid(R"({"rows": []})").ok());
}

TEST_F(RunnerTest, CheckedInSweepGridParses) {
  absl::StatusOr<std::string> text =
      ReadFile(std::string(ANONKIT_SOURCE_DIR) + "/configs/sweep_methods.json");
  ASSERT_TRUE(text.ok());
  absl::StatusOr<SweepGrid> grid = ParseSweepGrid(*text);
  ASSERT_TRUE(grid.ok()) << grid.status();
  EXPECT_EQ(grid->group_sets.size(), 3u);
  EXPECT_EQ(grid->runs.size(), 5u);
}

TEST_F(RunnerTest, RunWritesConsistentOutputs) {
  const std::string input = Tmp("input.txt");
  ASSERT_TRUE(WriteFileAtomically(
                  input, SerializeDataset(*GeneratePdLike(DefaultGeneratorSpec(1500, 2))))
                  .ok());
  for (Method m : {Method::kKAnon, Method::kKAnonTClose, Method::kCoarsen,
                   Method::kSafeHarbor}) {
    RunConfig rc;
    rc.input_path = input;
    rc.config_path = ConfigPath();
    rc.output_path = Tmp("out.txt");
    rc.report_path = Tmp("report.csv");
    rc.method = m;
    rc.params.k = 4;
    rc.params.fraction = 16;
    absl::StatusOr<ReportRow> row = anonkit::Run(rc);
    ASSERT_TRUE(row.ok()) << row.status();
    const std::string out1 = *ReadFile(rc.output_path);
    const std::string rep1 = *ReadFile(rc.report_path);
    ASSERT_TRUE(anonkit::Run(rc).ok());
    EXPECT_EQ(*ReadFile(rc.output_path), out1);
    EXPECT_EQ(*ReadFile(rc.report_path), rep1);
    Dataset released = *ParseDataset(out1, config_.schema);
    Dataset original = *ParseDataset(*ReadFile(input), config_.schema);
    absl::StatusOr<ReportRow> again = Assess(released, &original, config_, {});
    ASSERT_TRUE(again.ok());
    EXPECT_TRUE(SameMetrics(*row, *again)) << MethodName(m);
  }
}

TEST_F(RunnerTest, FailedRunLeavesNoOutputs) {
  RunConfig rc;
  rc.input_path = testing::DataPath("six_records.txt");
  rc.config_path = ConfigPath();
  rc.output_path = Tmp("fail_out.txt");
  rc.report_path = "/nonexistent/dir/report.csv";
  rc.method = Method::kKAnon;
  rc.params.k = 2;
  std::remove(rc.output_path.c_str());
  EXPECT_FALSE(anonkit::Run(rc).ok());
  EXPECT_FALSE(ReadFile(rc.output_path).ok());
  rc.report_path = Tmp("fail_report.csv");
  rc.params.k = 50;
  EXPECT_FALSE(anonkit::Run(rc).ok());
  EXPECT_FALSE(ReadFile(rc.output_path).ok());
  EXPECT_FALSE(ReadFile(rc.report_path).ok());
}

int Cli(const std::string& args) {
  const std::string cmd = std::string(ANONKIT_CLI_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliTest, ExitCodes) {
  const std::string data = Tmp("cli.txt");
  EXPECT_EQ(Cli("generate --n 300 --output " + data), 1);
  EXPECT_EQ(Cli("generate --n 300 --seed 4 --output " + data), 0);
  const std::string common = " --config " + ConfigPath() + " --output " +
                             Tmp("cli_out.txt") + " --report " + Tmp("cli_rep.csv");
  EXPECT_EQ(Cli("anonymize --input " + data + " --method k_anon --k 3" + common), 0);
  EXPECT_EQ(Cli("anonymize --input " + data + " --method k_anon" + common), 1);
  EXPECT_EQ(Cli("anonymize --input " + data + " --method bogus" + common), 1);
  EXPECT_EQ(Cli("anonymize --input " + data + " --method regenerate "
                "--distributions x.csv" + common), 1);
  EXPECT_EQ(Cli("anonymize --input " + data + " --method k_anon --k 3 --groups moon" +
                common), 1);
  EXPECT_EQ(Cli("anonymize --input " + data + " --method k_anon --k 9999" + common), 2);
  EXPECT_EQ(Cli("anonymize --input /nonexistent --method k_anon --k 3" + common), 2);
  EXPECT_EQ(Cli("assess --input " + testing::DataPath("cap_overlap.txt") +
                " --config " + ConfigPath() + " --report " + Tmp("cap.csv") +
                " --realization-cap 1"), 3);
  EXPECT_EQ(Cli("assess --input " + testing::DataPath("cap_overlap.txt") +
                " --config " + ConfigPath() + " --report " + Tmp("cap.csv")), 0);
  EXPECT_EQ(Cli("frobnicate"), 1);
  EXPECT_EQ(Cli(""), 1);
}

TEST(CliTest, SweepAndGenerateAreReproducible) {
  const std::string a = Tmp("gen_a.txt"), b = Tmp("gen_b.txt");
  ASSERT_EQ(Cli("generate --n 800 --seed 9 --output " + a), 0);
  ASSERT_EQ(Cli("generate --n 800 --seed 9 --output " + b), 0);
  EXPECT_EQ(*ReadFile(a), *ReadFile(b));
  const std::string grid = Tmp("grid.json");
  ASSERT_TRUE(WriteFileAtomically(
                  grid, R"({"runs": [{"method": "k_anon", "k": [2, 5]},
                                     {"method": "coarsen", "fraction": [8]}]})")
                  .ok());
  const std::string s1 = Tmp("sweep1.csv"), s2 = Tmp("sweep2.csv");
  const std::string base = "sweep --input " + a + " --config " + ConfigPath() +
                           " --grid " + grid + " --output ";
  ASSERT_EQ(Cli(base + s1), 0);
  ASSERT_EQ(Cli(base + s2), 0);
  EXPECT_EQ(*ReadFile(s1), *ReadFile(s2));
  const std::string csv = *ReadFile(s1);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

}  // namespace
}  // namespace anonkit
