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

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <exception>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "anonkit/coarsening.h"
#include "anonkit/distance.h"
#include "anonkit/k_anonymity.h"
#include "anonkit/risk.h"
#include "anonkit/safe_harbor.h"
#include "anonkit/status_macros.h"
#include "anonkit/text_format.h"
#include "json.hpp"

namespace anonkit {
namespace {

using nlohmann::json;

// Shortest representation that parses back to the same double.
std::string FormatDouble(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

template <typename T>
std::string Optional(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return FormatDouble(*v);
  } else {
    return absl::StrCat(*v);
  }
}

std::string CsvSafe(absl::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == ',' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

absl::StatusOr<AttributeSet> SelectedQuasiIdentifiers(
    const Schema& schema, const std::vector<FeatureGroup>& groups) {
  AttributeSet q = schema.QuasiIdentifiers(groups);
  if (q.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "no quasi-identifiers in groups ", GroupListName(groups)));
  }
  return q;
}

absl::StatusOr<std::optional<double>> Disclosure(const Dataset& released,
                                                 const AttributeSet& q,
                                                 const ValuePredicate& z,
                                                 absl::string_view name) {
  RETURN_IF_ERROR(RequirePoints(released, AttributeSet{z.attribute},
                                absl::StrCat("predicate ", name)));
  bool any = false;
  for (std::size_t i = 0; i < released.num_records() && !any; ++i) {
    any = z.Matches(released.cell(i, z.attribute).value());
  }
  if (!any) return std::optional<double>();
  ASSIGN_OR_RETURN(double risk, AttributeDisclosureRisk(released, q, z));
  return std::optional<double>(risk);
}

std::string ResolutionLabel(const MethodParams& params) {
  std::vector<std::string> parts;
  if (params.fraction) parts.push_back(absl::StrCat("1/", *params.fraction));
  for (const auto& [name, r] : params.resolutions) {
    parts.push_back(absl::StrCat(name, "=", r));
  }
  return absl::StrJoin(parts, ";");
}

ReportRow Header(Method method, const MethodParams& params,
                 const std::vector<FeatureGroup>& groups) {
  ReportRow row;
  row.method = std::string(MethodName(method));
  if (method == Method::kKAnon || method == Method::kKAnonTClose) {
    row.k = params.k;
  }
  if (method == Method::kKAnonTClose) row.t = params.t;
  if (method == Method::kCoarsen) row.resolution = ResolutionLabel(params);
  row.qi_groups = GroupListName(groups);
  return row;
}

absl::StatusOr<Dataset> LoadDataset(const std::string& path,
                                    const Schema& schema) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  absl::StatusOr<Dataset> d = ParseDataset(text, schema);
  if (!d.ok()) {
    return absl::Status(d.status().code(),
                        absl::StrCat(path, ": ", d.status().message()));
  }
  return d;
}

template <typename T>
absl::StatusOr<std::vector<T>> ScalarOrList(const json& j,
                                            absl::string_view key) {
  std::vector<T> out;
  if (!j.contains(key)) return out;
  const json& v = j[std::string(key)];
  auto one = [&](const json& x) -> absl::Status {
    if constexpr (std::is_floating_point_v<T>) {
      if (!x.is_number()) {
        return absl::InvalidArgumentError(
            absl::StrCat("grid: ", key, " must be numeric"));
      }
    } else {
      if (!x.is_number_unsigned()) {
        return absl::InvalidArgumentError(
            absl::StrCat("grid: ", key, " must be a positive integer"));
      }
    }
    out.push_back(x.get<T>());
    return absl::OkStatus();
  };
  if (v.is_array()) {
    for (const json& x : v) RETURN_IF_ERROR(one(x));
  } else {
    RETURN_IF_ERROR(one(v));
  }
  return out;
}

}  // namespace

absl::string_view MethodName(Method method) {
  switch (method) {
    case Method::kNone:
      return "none";
    case Method::kCoarsen:
      return "coarsen";
    case Method::kKAnon:
      return "k_anon";
    case Method::kKAnonTClose:
      return "k_anon_t_close";
    case Method::kSafeHarbor:
      return "safe_harbor";
    case Method::kRegenerate:
      return "regenerate";
  }
  return "unknown";
}

absl::StatusOr<Method> ParseMethod(absl::string_view name) {
  for (Method m : {Method::kNone, Method::kCoarsen, Method::kKAnon,
                   Method::kKAnonTClose, Method::kSafeHarbor,
                   Method::kRegenerate}) {
    if (MethodName(m) == name) return m;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown method \"", name, "\""));
}

absl::Status ValidateMethodParams(Method method, const MethodParams& params) {
  switch (method) {
    case Method::kNone:
    case Method::kSafeHarbor:
      return absl::OkStatus();
    case Method::kCoarsen:
      if (!params.fraction && params.resolutions.empty()) {
        return absl::InvalidArgumentError(
            "coarsen needs a fraction or per-attribute resolutions");
      }
      if (params.fraction && *params.fraction == 0) {
        return absl::InvalidArgumentError("fraction must be >= 1");
      }
      for (const auto& [name, r] : params.resolutions) {
        if (r == 0) {
          return absl::InvalidArgumentError(
              absl::StrCat("resolution for ", name, " must be >= 1"));
        }
      }
      return absl::OkStatus();
    case Method::kKAnon:
    case Method::kKAnonTClose:
      if (!params.k) return absl::InvalidArgumentError("k is required");
      if (*params.k < 2) return absl::InvalidArgumentError("k must be >= 2");
      if (params.t && !(*params.t > 0.0)) {
        return absl::InvalidArgumentError("t must be > 0");
      }
      return absl::OkStatus();
    case Method::kRegenerate:
      if (!params.seed) {
        return absl::InvalidArgumentError("regenerate requires a seed");
      }
      return absl::OkStatus();
  }
  return absl::InvalidArgumentError("unknown method");
}

std::string ReportHeader(const AnonkitConfig& config) {
  std::string out =
      "method,k,t,cluster_size,resolution,qi_groups,records,unique_count,"
      "reid_risk,min_class_size,mean_class_size,worst_case_guess_rate,"
      "residual_uniques";
  for (const PredicateSpec& p : config.predicates) {
    absl::StrAppend(&out, ",disclosure_", p.name);
  }
  absl::StrAppend(&out, ",information_loss,status\n");
  return out;
}

std::string ReportLine(const ReportRow& row) {
  std::vector<std::string> cells = {
      row.method,
      Optional(row.k),
      Optional(row.t),
      Optional(row.cluster_size),
      CsvSafe(row.resolution),
      row.qi_groups,
      absl::StrCat(row.records),
      absl::StrCat(row.unique_count),
      FormatDouble(row.reid_risk),
      absl::StrCat(row.min_class_size),
      FormatDouble(row.mean_class_size),
      Optional(row.worst_case_guess_rate),
      Optional(row.residual_uniques),
  };
  for (const auto& [name, value] : row.disclosure) {
    cells.push_back(Optional(value));
  }
  cells.push_back(Optional(row.information_loss));
  if (row.status != "ok") {
    // No metrics for a failed cell.
    for (std::size_t i = 6; i < cells.size(); ++i) cells[i].clear();
  }
  cells.push_back(CsvSafe(row.status));
  return absl::StrCat(absl::StrJoin(cells, ","), "\n");
}

std::string ReportCsv(const AnonkitConfig& config,
                      const std::vector<ReportRow>& rows) {
  std::string out = ReportHeader(config);
  for (const ReportRow& row : rows) {
    if (row.disclosure.size() != config.predicates.size()) {
      // Failed cells carry no metrics; keep the column count.
      ReportRow padded = row;
      padded.disclosure.resize(config.predicates.size());
      absl::StrAppend(&out, ReportLine(padded));
    } else {
      absl::StrAppend(&out, ReportLine(row));
    }
  }
  return out;
}

bool SameMetrics(const ReportRow& a, const ReportRow& b) {
  return a.records == b.records && a.unique_count == b.unique_count &&
         a.reid_risk == b.reid_risk && a.min_class_size == b.min_class_size &&
         a.mean_class_size == b.mean_class_size &&
         a.worst_case_guess_rate == b.worst_case_guess_rate &&
         a.disclosure == b.disclosure &&
         a.information_loss == b.information_loss;
}

absl::StatusOr<ReportRow> Assess(const Dataset& released,
                                 const Dataset* original,
                                 const AnonkitConfig& config,
                                 const std::vector<FeatureGroup>& groups,
                                 const UniquenessOptions& options) {
  if (!(released.schema() == config.schema)) {
    return absl::InvalidArgumentError("dataset schema differs from config");
  }
  ASSIGN_OR_RETURN(AttributeSet q,
                   SelectedQuasiIdentifiers(config.schema, groups));
  ReportRow row;
  row.method = "assess";
  row.qi_groups = GroupListName(groups);
  ASSIGN_OR_RETURN(RiskReport risk, ReidentificationRisk(released, q, options));
  row.records = risk.total;
  row.unique_count = risk.unique_count;
  row.reid_risk = risk.risk;
  row.min_class_size = risk.min_class_size;
  row.mean_class_size = risk.mean_class_size;
  if (risk.min_class_size > 0) {
    row.worst_case_guess_rate = 1.0 / static_cast<double>(risk.min_class_size);
  }
  const Dataset& base = original != nullptr ? *original : released;
  for (const PredicateSpec& spec : config.predicates) {
    ASSIGN_OR_RETURN(ValuePredicate z, ResolvePredicate(spec, base));
    ASSIGN_OR_RETURN(std::optional<double> value,
                     Disclosure(released, q, z, spec.name));
    row.disclosure.emplace_back(spec.name, value);
  }
  if (original != nullptr) {
    const AttributeStats stats = ComputeAttributeStats(*original);
    ASSIGN_OR_RETURN(double il, InformationLoss(*original, released, q, stats));
    row.information_loss = il;
  }
  return row;
}

absl::StatusOr<Evaluation> Evaluate(const Dataset& input,
                                    const AnonkitConfig& config, Method method,
                                    const MethodParams& params,
                                    const std::vector<FeatureGroup>& groups,
                                    const Dataset* original,
                                    const UniquenessOptions& options) {
  RETURN_IF_ERROR(ValidateMethodParams(method, params));
  if (!(input.schema() == config.schema)) {
    return absl::InvalidArgumentError("dataset schema differs from config");
  }
  const Schema& schema = config.schema;
  ASSIGN_OR_RETURN(AttributeSet q, SelectedQuasiIdentifiers(schema, groups));
  const AttributeStats stats = ComputeAttributeStats(input);
  ReportRow head = Header(method, params, groups);

  Evaluation ev;
  std::optional<std::size_t> residual;
  switch (method) {
    case Method::kNone:
      ev.output = input;
      break;
    case Method::kCoarsen: {
      CoarseningSpec spec;
      for (const auto& [name, r] : params.resolutions) {
        ASSIGN_OR_RETURN(std::size_t a, schema.RequireIndex(name));
        if (!std::binary_search(q.begin(), q.end(), a)) {
          return absl::InvalidArgumentError(absl::StrCat(
              "resolution given for ", name,
              ", which is not a selected quasi-identifier"));
        }
        spec.resolution[a] = r;
      }
      if (params.fraction) {
        for (std::size_t a : q) {
          spec.resolution.try_emplace(
              a, ResolutionForFraction(schema.attribute(a), *params.fraction));
        }
      }
      ASSIGN_OR_RETURN(ev.output, Coarsen(input, spec));
      break;
    }
    case Method::kKAnon: {
      ASSIGN_OR_RETURN(ClusteredDataset c, KAnonymize(input, *params.k, q, stats));
      ev.output = std::move(c.dataset);
      break;
    }
    case Method::kKAnonTClose: {
      ASSIGN_OR_RETURN(std::size_t conf, ClosenessAttribute(config));
      ASSIGN_OR_RETURN(ClosenessParams bounds,
                       ClosenessBounds(input.num_records(), *params.k, params.t));
      ASSIGN_OR_RETURN(ClusteredDataset c,
                       KAnonymizeTClose(input, *params.k, bounds.t, conf, q, stats));
      std::size_t smallest = input.num_records();
      for (const auto& cluster : c.clusters) {
        smallest = std::min(smallest, cluster.size());
      }
      head.t = bounds.t;
      head.cluster_size = smallest;
      ev.output = std::move(c.dataset);
      break;
    }
    case Method::kSafeHarbor: {
      // Only masks on attributes the attacker is assumed to know matter for
      // uniqueness over q.
      MaskingOrder order;
      for (const MaskingStep& step : config.masking_order.steps) {
        if (std::binary_search(q.begin(), q.end(), step.attribute)) {
          order.steps.push_back(step);
        }
      }
      ASSIGN_OR_RETURN(SafeHarborResult r,
                       SafeHarborMask(input, order, q, options));
      residual = r.residual_records.size();
      ev.output = std::move(r.dataset);
      break;
    }
    case Method::kRegenerate: {
      ASSIGN_OR_RETURN(ev.output, RegenerateMasked(input, params.distributions,
                                                   *params.seed));
      break;
    }
  }

  const Dataset* baseline = method == Method::kRegenerate ? original : &input;
  ASSIGN_OR_RETURN(ReportRow metrics,
                   Assess(ev.output, baseline, config, groups, options));
  metrics.method = head.method;
  metrics.k = head.k;
  metrics.t = head.t;
  metrics.cluster_size = head.cluster_size;
  metrics.resolution = head.resolution;
  metrics.residual_uniques = residual;
  ev.report = std::move(metrics);
  return ev;
}

absl::StatusOr<ReportRow> Run(const RunConfig& rc) {
  if (rc.output_path.empty() || rc.report_path.empty()) {
    return absl::InvalidArgumentError("output and report paths are required");
  }
  ASSIGN_OR_RETURN(std::string config_text, ReadFile(rc.config_path));
  ASSIGN_OR_RETURN(AnonkitConfig config, ParseConfigJson(config_text));
  ASSIGN_OR_RETURN(Dataset input, LoadDataset(rc.input_path, config.schema));
  std::optional<Dataset> original;
  if (!rc.original_path.empty()) {
    ASSIGN_OR_RETURN(original, LoadDataset(rc.original_path, config.schema));
  }
  MethodParams params = rc.params;
  if (!rc.distributions_path.empty()) {
    ASSIGN_OR_RETURN(std::string text, ReadFile(rc.distributions_path));
    ASSIGN_OR_RETURN(params.distributions,
                     ParseDistributionsCsv(text, config.schema));
  }
  ASSIGN_OR_RETURN(Evaluation ev,
                   Evaluate(input, config, rc.method, params, rc.groups,
                            original ? &*original : nullptr, rc.uniqueness));
  RETURN_IF_ERROR(WriteFileAtomically(rc.output_path, SerializeDataset(ev.output)));
  absl::Status report = WriteFileAtomically(
      rc.report_path, ReportCsv(config, {ev.report}));
  if (!report.ok()) {
    std::remove(rc.output_path.c_str());
    return report;
  }
  return ev.report;
}

absl::StatusOr<SweepGrid> ParseSweepGrid(absl::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const std::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("grid: malformed JSON: ", e.what()));
  }
  if (!root.is_object()) return absl::InvalidArgumentError("grid: expected an object");
  for (const auto& [key, value] : root.items()) {
    if (key != "group_sets" && key != "runs") {
      return absl::InvalidArgumentError(
          absl::StrCat("grid: unknown key \"", key, "\""));
    }
  }
  SweepGrid grid;
  if (root.contains("group_sets")) {
    if (!root["group_sets"].is_array()) {
      return absl::InvalidArgumentError("grid: group_sets must be an array");
    }
    for (const json& set : root["group_sets"]) {
      std::string joined;
      if (set.is_string()) {
        joined = set.get<std::string>();
      } else if (set.is_array()) {
        for (const json& g : set) {
          if (!g.is_string()) {
            return absl::InvalidArgumentError("grid: group names are strings");
          }
          if (!joined.empty()) joined += ',';
          joined += g.get<std::string>();
        }
      } else {
        return absl::InvalidArgumentError("grid: bad group set");
      }
      ASSIGN_OR_RETURN(std::vector<FeatureGroup> groups, ParseGroupList(joined));
      grid.group_sets.push_back(std::move(groups));
    }
  }
  if (root.contains("runs")) {
    if (!root["runs"].is_array()) {
      return absl::InvalidArgumentError("grid: runs must be an array");
    }
    for (const json& r : root["runs"]) {
      if (!r.is_object() || !r.contains("method") || !r["method"].is_string()) {
        return absl::InvalidArgumentError("grid: each run needs a method");
      }
      for (const auto& [key, value] : r.items()) {
        if (key != "method" && key != "k" && key != "t" && key != "fraction") {
          return absl::InvalidArgumentError(
              absl::StrCat("grid: unknown run key \"", key, "\""));
        }
      }
      SweepRun run;
      ASSIGN_OR_RETURN(run.method, ParseMethod(r["method"].get<std::string>()));
      if (run.method == Method::kRegenerate) {
        return absl::InvalidArgumentError(
            "grid: regenerate needs external distributions; run it directly");
      }
      ASSIGN_OR_RETURN(run.k, ScalarOrList<std::size_t>(r, "k"));
      ASSIGN_OR_RETURN(run.t, ScalarOrList<double>(r, "t"));
      ASSIGN_OR_RETURN(run.fraction, ScalarOrList<uint64_t>(r, "fraction"));
      grid.runs.push_back(std::move(run));
    }
  }
  return grid;
}

std::vector<ReportRow> Sweep(const Dataset& input, const AnonkitConfig& config,
                             const SweepGrid& grid,
                             const UniquenessOptions& options) {
  std::vector<ReportRow> rows;
  std::vector<std::vector<FeatureGroup>> sets = grid.group_sets;
  if (sets.empty()) sets.emplace_back();
  for (const auto& groups : sets) {
    for (const SweepRun& run : grid.runs) {
      std::vector<MethodParams> cells;
      const std::vector<std::optional<std::size_t>> ks =
          run.k.empty() ? std::vector<std::optional<std::size_t>>{std::nullopt}
                        : std::vector<std::optional<std::size_t>>(run.k.begin(),
                                                                  run.k.end());
      const std::vector<std::optional<double>> ts =
          run.t.empty() ? std::vector<std::optional<double>>{std::nullopt}
                        : std::vector<std::optional<double>>(run.t.begin(),
                                                             run.t.end());
      const std::vector<std::optional<uint64_t>> fs =
          run.fraction.empty()
              ? std::vector<std::optional<uint64_t>>{std::nullopt}
              : std::vector<std::optional<uint64_t>>(run.fraction.begin(),
                                                     run.fraction.end());
      for (const auto& k : ks) {
        for (const auto& t : ts) {
          for (const auto& f : fs) {
            MethodParams p;
            p.k = k;
            p.t = t;
            p.fraction = f;
            cells.push_back(std::move(p));
          }
        }
      }
      for (const MethodParams& p : cells) {
        absl::StatusOr<Evaluation> ev =
            Evaluate(input, config, run.method, p, groups, nullptr, options);
        if (ev.ok()) {
          rows.push_back(std::move(ev->report));
        } else {
          ReportRow row = Header(run.method, p, groups);
          row.status = absl::StrCat("error: ", ev.status().message());
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

}  // namespace anonkit
