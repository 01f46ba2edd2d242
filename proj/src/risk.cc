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

#include "anonkit/risk.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "anonkit/equivalence.h"
#include "anonkit/status_macros.h"

namespace anonkit {

absl::StatusOr<RiskReport> ReidentificationRisk(
    const Dataset& d, const AttributeSet& q, const UniquenessOptions& options) {
  RETURN_IF_ERROR(ValidateAttributeSet(d.schema(), q));
  for (std::size_t a : q) {
    if (!d.schema().attribute(a).is_quasi_identifier()) {
      return absl::InvalidArgumentError(
          absl::StrCat("'", d.schema().attribute(a).name,
                       "' is not a quasi-identifier"));
    }
  }
  WorstCaseUniqueness eval(d, q, options);
  ASSIGN_OR_RETURN(std::vector<std::size_t> uniques, eval.UniqueRecords());

  RiskReport report;
  report.qi_set = d.schema().Names(q);
  report.unique_count = uniques.size();
  report.total = d.num_records();
  report.risk = report.total == 0
                    ? 0.0
                    : static_cast<double>(report.unique_count) /
                          static_cast<double>(report.total);
  report.class_size_histogram = eval.partition().SizeHistogram();
  report.min_class_size = eval.partition().min_class_size();
  report.mean_class_size = eval.partition().mean_class_size();
  return report;
}

std::string RiskHistogramCsv(const RiskReport& report) {
  std::string out = "class_size,count\n";
  for (const auto& [size, count] : report.class_size_histogram) {
    absl::StrAppend(&out, size, ",", count, "\n");
  }
  return out;
}

bool ValuePredicate::Matches(int64_t v) const {
  if (min.has_value() && v < *min) return false;
  if (max.has_value() && v > *max) return false;
  if (!values.empty() && !std::binary_search(values.begin(), values.end(), v)) {
    return false;
  }
  return true;
}

absl::StatusOr<double> AttributeDisclosureRisk(const Dataset& d,
                                               const AttributeSet& q,
                                               const ValuePredicate& z) {
  RETURN_IF_ERROR(ValidateAttributeSet(d.schema(), q));
  if (z.attribute >= d.num_attributes()) {
    return absl::InvalidArgumentError("predicate attribute out of range");
  }
  if (!std::is_sorted(z.values.begin(), z.values.end())) {
    return absl::InvalidArgumentError("predicate values must be sorted");
  }
  RETURN_IF_ERROR(RequirePoints(d, {z.attribute}, "attribute disclosure risk"));

  const ClassPartition p = PartitionByCells(d, q);
  std::vector<bool> diverse(p.num_classes(), false);
  std::size_t matching = 0;
  for (std::size_t i = 0; i < d.num_records(); ++i) {
    if (z.Matches(d.cell(i, z.attribute).value())) {
      ++matching;
    } else {
      diverse[p.class_of[i]] = true;
    }
  }
  if (matching == 0) {
    return absl::FailedPreconditionError(
        absl::StrCat("no record satisfies the predicate on '",
                     d.schema().attribute(z.attribute).name, "'"));
  }
  std::size_t exposed = 0;
  for (std::size_t c = 0; c < p.num_classes(); ++c) {
    if (!diverse[c]) exposed += p.class_sizes[c];
  }
  return static_cast<double>(exposed) / static_cast<double>(matching);
}

}  // namespace anonkit
