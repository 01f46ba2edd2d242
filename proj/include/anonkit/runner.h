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

#ifndef ANONKIT_RUNNER_H_
#define ANONKIT_RUNNER_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "anonkit/config.h"
#include "anonkit/dataset.h"
#include "anonkit/regeneration.h"
#include "anonkit/schema.h"
#include "anonkit/uniqueness.h"

namespace anonkit {

enum class Method {
  kNone,
  kCoarsen,
  kKAnon,
  kKAnonTClose,
  kSafeHarbor,
  kRegenerate,
};

absl::string_view MethodName(Method method);
absl::StatusOr<Method> ParseMethod(absl::string_view name);

struct MethodParams {
  std::optional<std::size_t> k;
  // k_anon_t_close; defaults to the largest t reachable for k.
  std::optional<double> t;
  // coarsen: every selected quasi-identifier gets intervals of 1/fraction of
  // its domain...
  std::optional<uint64_t> fraction;
  // ...unless it has an explicit resolution here (attribute name -> r).
  std::map<std::string, uint64_t> resolutions;
  // regenerate.
  std::optional<uint64_t> seed;
  MaskedValueDistributions distributions;
};

// Checks that `params` carries what `method` needs, independent of data.
absl::Status ValidateMethodParams(Method method, const MethodParams& params);

struct ReportRow {
  std::string method;
  std::optional<std::size_t> k;
  std::optional<double> t;
  // Cluster size actually used by k_anon_t_close.
  std::optional<std::size_t> cluster_size;
  std::string resolution;
  std::string qi_groups;
  std::size_t records = 0;
  std::size_t unique_count = 0;
  double reid_risk = 0.0;
  std::size_t min_class_size = 0;
  double mean_class_size = 0.0;
  // 1 / min class size.
  std::optional<double> worst_case_guess_rate;
  // safe_harbor only: records left unique after every applicable step.
  std::optional<std::size_t> residual_uniques;
  // One entry per configured predicate, in config order; empty when no
  // record satisfies it.
  std::vector<std::pair<std::string, std::optional<double>>> disclosure;
  std::optional<double> information_loss;
  std::string status = "ok";
};

std::string ReportHeader(const AnonkitConfig& config);
std::string ReportLine(const ReportRow& row);
std::string ReportCsv(const AnonkitConfig& config,
                      const std::vector<ReportRow>& rows);

// Metric columns only, for comparing runs and reassessments.
bool SameMetrics(const ReportRow& a, const ReportRow& b);

// Risk, disclosure and (with `original`) information loss of `released`
// over the quasi-identifiers of `groups`. Threshold predicates resolve
// against `original` when given, else against `released`.
absl::StatusOr<ReportRow> Assess(const Dataset& released,
                                 const Dataset* original,
                                 const AnonkitConfig& config,
                                 const std::vector<FeatureGroup>& groups,
                                 const UniquenessOptions& options = {});

struct Evaluation {
  Dataset output;
  ReportRow report;
};

// Anonymizes `input` with `method` over the selected quasi-identifiers and
// assesses the result against `input`. For regenerate, `original` (if any)
// is the baseline for information loss.
absl::StatusOr<Evaluation> Evaluate(const Dataset& input,
                                    const AnonkitConfig& config, Method method,
                                    const MethodParams& params,
                                    const std::vector<FeatureGroup>& groups,
                                    const Dataset* original = nullptr,
                                    const UniquenessOptions& options = {});

struct RunConfig {
  std::string input_path;
  std::string config_path;
  std::string output_path;
  std::string report_path;
  // Optional: unmasked data for information loss when regenerating.
  std::string original_path;
  // regenerate: "attribute,value,weight" CSV.
  std::string distributions_path;
  Method method = Method::kNone;
  MethodParams params;
  std::vector<FeatureGroup> groups;
  UniquenessOptions uniqueness;
};

// File-level run. Either both outputs are written or neither is left behind.
absl::StatusOr<ReportRow> Run(const RunConfig& config);

struct SweepRun {
  Method method = Method::kNone;
  // Each value gives one row; methods without the parameter use one row.
  std::vector<std::size_t> k;
  std::vector<double> t;
  std::vector<uint64_t> fraction;
};

struct SweepGrid {
  // Empty means one set selecting every quasi-identifier.
  std::vector<std::vector<FeatureGroup>> group_sets;
  std::vector<SweepRun> runs;
};

// {"group_sets": [["census"], ["census", "spatial"]],
//  "runs": [{"method": "k_anon", "k": [2, 3, 5, 10]},
//           {"method": "coarsen", "fraction": [32, 16, 8]}]}
absl::StatusOr<SweepGrid> ParseSweepGrid(absl::string_view text);

// Rows in grid order: group set, then run, then parameter value. A failing
// cell yields a row whose status starts with "error" and the sweep goes on.
std::vector<ReportRow> Sweep(const Dataset& input, const AnonkitConfig& config,
                             const SweepGrid& grid,
                             const UniquenessOptions& options = {});

}  // namespace anonkit

#endif  // ANONKIT_RUNNER_H_
