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

// anonkit: generate synthetic discharge data, anonymize it, assess risk and
// utility, and sweep parameter grids.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 realization cap
// exceeded.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_split.h"
#include "anonkit/config.h"
#include "anonkit/generator.h"
#include "anonkit/risk.h"
#include "anonkit/runner.h"
#include "anonkit/schema.h"
#include "anonkit/text_format.h"

namespace {

constexpr int kUsage = 1;
constexpr int kDataError = 2;
constexpr int kCapExceeded = 3;

int Fail(const absl::Status& status, int code) {
  std::cerr << "anonkit: " << status.message() << "\n";
  return code;
}

int DataFailure(const absl::Status& status) {
  return Fail(status, status.code() == absl::StatusCode::kResourceExhausted
                          ? kCapExceeded
                          : kDataError);
}

struct Common {
  std::string input;
  std::string config;
  std::string groups = "all";
  uint64_t cap = anonkit::UniquenessOptions{}.realization_cap;
};

void AddCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("--input", c.input, "Dataset in anonkit text format")
      ->required();
  cmd->add_option("--config", c.config, "Schema/config JSON")->required();
  cmd->add_option("--groups", c.groups,
                  "Attacker-known QI groups: all or a comma list of "
                  "census,spatial,temporal");
  cmd->add_option("--realization-cap", c.cap,
                  "Max realization regions per uniqueness check");
}

absl::StatusOr<anonkit::AnonkitConfig> LoadConfig(const std::string& path) {
  absl::StatusOr<std::string> text = anonkit::ReadFile(path);
  if (!text.ok()) return text.status();
  return anonkit::ParseConfigJson(*text);
}

absl::StatusOr<anonkit::Dataset> LoadData(const std::string& path,
                                          const anonkit::Schema& schema) {
  absl::StatusOr<std::string> text = anonkit::ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<anonkit::Dataset> d = anonkit::ParseDataset(*text, schema);
  if (!d.ok()) {
    return absl::Status(d.status().code(),
                        path + ": " + std::string(d.status().message()));
  }
  return d;
}

int Generate(std::size_t n, std::optional<uint64_t> seed, double coupling,
             const std::string& output, const std::string& config_out) {
  anonkit::GeneratorSpec spec = anonkit::DefaultGeneratorSpec(n, *seed);
  spec.hospital_county_coupling = coupling;
  if (absl::Status s = anonkit::ValidateGeneratorSpec(spec); !s.ok()) {
    return Fail(s, kUsage);
  }
  absl::StatusOr<anonkit::Dataset> d = anonkit::GeneratePdLike(spec);
  if (!d.ok()) return DataFailure(d.status());
  if (absl::Status s = anonkit::WriteFileAtomically(
          output, anonkit::SerializeDataset(*d));
      !s.ok()) {
    return DataFailure(s);
  }
  if (!config_out.empty()) {
    if (absl::Status s = anonkit::WriteFileAtomically(
            config_out, anonkit::ConfigToJson(anonkit::DefaultPdConfig()));
        !s.ok()) {
      std::remove(output.c_str());
      return DataFailure(s);
    }
  }
  return 0;
}

int Anonymize(const Common& c, const std::string& method_name,
              std::optional<std::size_t> k, std::optional<double> t,
              std::optional<uint64_t> fraction,
              const std::vector<std::string>& resolutions,
              std::optional<uint64_t> seed, const std::string& distributions,
              const std::string& original, const std::string& output,
              const std::string& report) {
  anonkit::RunConfig rc;
  rc.input_path = c.input;
  rc.config_path = c.config;
  rc.output_path = output;
  rc.report_path = report;
  rc.original_path = original;
  rc.distributions_path = distributions;
  rc.uniqueness.realization_cap = c.cap;

  absl::StatusOr<anonkit::Method> method = anonkit::ParseMethod(method_name);
  if (!method.ok()) return Fail(method.status(), kUsage);
  rc.method = *method;
  absl::StatusOr<std::vector<anonkit::FeatureGroup>> groups =
      anonkit::ParseGroupList(c.groups);
  if (!groups.ok()) return Fail(groups.status(), kUsage);
  rc.groups = *groups;
  rc.params.k = k;
  rc.params.t = t;
  rc.params.fraction = fraction;
  rc.params.seed = seed;
  for (const std::string& r : resolutions) {
    std::pair<std::string, std::string> kv = absl::StrSplit(r, '=');
    uint64_t value = 0;
    if (kv.first.empty() || !absl::SimpleAtoi(kv.second, &value)) {
      return Fail(absl::InvalidArgumentError(
                      "--resolution expects attribute=intervals, got " + r),
                  kUsage);
    }
    rc.params.resolutions[kv.first] = value;
  }
  if (rc.method == anonkit::Method::kRegenerate && distributions.empty()) {
    return Fail(absl::InvalidArgumentError("regenerate needs --distributions"),
                kUsage);
  }
  if (absl::Status s = anonkit::ValidateMethodParams(rc.method, rc.params);
      !s.ok()) {
    return Fail(s, kUsage);
  }
  absl::StatusOr<anonkit::ReportRow> row = anonkit::Run(rc);
  if (!row.ok()) return DataFailure(row.status());
  return 0;
}

int Assess(const Common& c, const std::string& original,
           const std::string& report, const std::string& histogram) {
  absl::StatusOr<std::vector<anonkit::FeatureGroup>> groups =
      anonkit::ParseGroupList(c.groups);
  if (!groups.ok()) return Fail(groups.status(), kUsage);
  absl::StatusOr<anonkit::AnonkitConfig> config = LoadConfig(c.config);
  if (!config.ok()) return DataFailure(config.status());
  absl::StatusOr<anonkit::Dataset> released = LoadData(c.input, config->schema);
  if (!released.ok()) return DataFailure(released.status());
  std::optional<anonkit::Dataset> base;
  if (!original.empty()) {
    absl::StatusOr<anonkit::Dataset> o = LoadData(original, config->schema);
    if (!o.ok()) return DataFailure(o.status());
    base = std::move(*o);
  }
  anonkit::UniquenessOptions options;
  options.realization_cap = c.cap;
  absl::StatusOr<anonkit::ReportRow> row = anonkit::Assess(
      *released, base ? &*base : nullptr, *config, *groups, options);
  if (!row.ok()) return DataFailure(row.status());
  const std::string csv = anonkit::ReportCsv(*config, {*row});
  if (report.empty() || report == "-") {
    std::cout << csv;
  } else if (absl::Status s = anonkit::WriteFileAtomically(report, csv);
             !s.ok()) {
    return DataFailure(s);
  }
  if (!histogram.empty()) {
    absl::StatusOr<anonkit::RiskReport> risk = anonkit::ReidentificationRisk(
        *released, config->schema.QuasiIdentifiers(*groups), options);
    absl::Status s = risk.ok() ? anonkit::WriteFileAtomically(
                                     histogram, anonkit::RiskHistogramCsv(*risk))
                               : risk.status();
    if (!s.ok()) {
      if (!report.empty() && report != "-") std::remove(report.c_str());
      return DataFailure(s);
    }
  }
  return 0;
}

int RunSweep(const Common& c, const std::string& grid_path,
             const std::string& output) {
  absl::StatusOr<anonkit::AnonkitConfig> config = LoadConfig(c.config);
  if (!config.ok()) return DataFailure(config.status());
  absl::StatusOr<std::string> grid_text = anonkit::ReadFile(grid_path);
  if (!grid_text.ok()) return DataFailure(grid_text.status());
  absl::StatusOr<anonkit::SweepGrid> grid = anonkit::ParseSweepGrid(*grid_text);
  if (!grid.ok()) return Fail(grid.status(), kUsage);
  absl::StatusOr<anonkit::Dataset> input = LoadData(c.input, config->schema);
  if (!input.ok()) return DataFailure(input.status());
  anonkit::UniquenessOptions options;
  options.realization_cap = c.cap;
  std::vector<anonkit::ReportRow> rows =
      anonkit::Sweep(*input, *config, *grid, options);
  for (const anonkit::ReportRow& row : rows) {
    if (row.status != "ok") {
      std::cerr << "anonkit: " << row.method << " [" << row.qi_groups
                << "]: " << row.status << "\n";
    }
  }
  if (absl::Status s = anonkit::WriteFileAtomically(
          output, anonkit::ReportCsv(*config, rows));
      !s.ok()) {
    return DataFailure(s);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anonkit: microdata anonymization and risk assessment"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Write a synthetic PD-like dataset");
  std::size_t n = 0;
  std::optional<uint64_t> gen_seed;
  double coupling = anonkit::GeneratorSpec{}.hospital_county_coupling;
  std::string gen_out, config_out;
  gen->add_option("--n", n, "Number of records")->required();
  gen->add_option("--seed", gen_seed, "RNG seed")->required();
  gen->add_option("--coupling", coupling,
                  "Probability of a same-county hospital")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--output", gen_out, "Dataset path")->required();
  gen->add_option("--config-out", config_out,
                  "Also write the matching config JSON here");

  auto* anon = app.add_subcommand("anonymize", "Anonymize and report");
  Common anon_common;
  AddCommon(anon, anon_common);
  std::string method, distributions, anon_original, anon_out, anon_report;
  std::optional<std::size_t> k;
  std::optional<double> t;
  std::optional<uint64_t> fraction, anon_seed;
  std::vector<std::string> resolutions;
  anon->add_option("--method", method,
                   "none, coarsen, k_anon, k_anon_t_close, safe_harbor, "
                   "regenerate")
      ->required();
  anon->add_option("--k", k, "Cluster size");
  anon->add_option("--t", t, "Closeness level (default: largest for k)");
  anon->add_option("--fraction", fraction,
                   "coarsen: intervals of 1/fraction of each domain");
  anon->add_option("--resolution", resolutions,
                   "coarsen: attribute=intervals, repeatable");
  anon->add_option("--seed", anon_seed, "regenerate: RNG seed");
  anon->add_option("--distributions", distributions,
                   "regenerate: attribute,value,weight CSV");
  anon->add_option("--original", anon_original,
                   "regenerate: unmasked data for information loss");
  anon->add_option("--output", anon_out, "Anonymized dataset path")->required();
  anon->add_option("--report", anon_report, "Report CSV path")->required();

  auto* assess = app.add_subcommand("assess", "Report risk of a dataset");
  Common assess_common;
  AddCommon(assess, assess_common);
  std::string assess_original, assess_report, histogram;
  assess->add_option("--original", assess_original,
                     "Unmasked data for information loss");
  assess->add_option("--report", assess_report, "Report CSV path (- = stdout)");
  assess->add_option("--histogram", histogram, "Class-size histogram CSV path");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter grid");
  Common sweep_common;
  AddCommon(sweep, sweep_common);
  std::string grid, sweep_out;
  sweep->add_option("--grid", grid, "Grid JSON")->required();
  sweep->add_option("--output", sweep_out, "Sweep CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (gen->parsed()) return Generate(n, gen_seed, coupling, gen_out, config_out);
  if (anon->parsed()) {
    if (method == "regenerate" && !anon_seed) {
      return Fail(absl::InvalidArgumentError("regenerate needs --seed"), kUsage);
    }
    return Anonymize(anon_common, method, k, t, fraction, resolutions, anon_seed,
                     distributions, anon_original, anon_out, anon_report);
  }
  if (assess->parsed()) {
    return Assess(assess_common, assess_original, assess_report, histogram);
  }
  if (sweep->parsed()) return RunSweep(sweep_common, grid, sweep_out);
  return kUsage;
}
