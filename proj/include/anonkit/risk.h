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

#ifndef ANONKIT_RISK_H_
#define ANONKIT_RISK_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "anonkit/dataset.h"
#include "anonkit/schema.h"
#include "anonkit/uniqueness.h"

namespace anonkit {

struct RiskReport {
  std::vector<std::string> qi_set;
  std::size_t unique_count = 0;
  std::size_t total = 0;
  double risk = 0.0;  // unique_count / total; 0 for an empty dataset.
  // Exact-equality class size -> number of classes.
  std::map<std::size_t, std::size_t> class_size_histogram;
  std::size_t min_class_size = 0;
  double mean_class_size = 0.0;
};

// Share of worst-case-unique records over `q`. Cap violations name the
// offending record.
absl::StatusOr<RiskReport> ReidentificationRisk(
    const Dataset& d, const AttributeSet& q,
    const UniquenessOptions& options = {});

// Histogram as CSV: "class_size,count" header, one row per bucket.
std::string RiskHistogramCsv(const RiskReport& report);

// Membership test over one confidential attribute: an inclusive threshold
// range, a category set, or both (then a value must satisfy each).
struct ValuePredicate {
  std::size_t attribute = 0;
  std::optional<int64_t> min;
  std::optional<int64_t> max;
  std::vector<int64_t> values;

  bool Matches(int64_t v) const;
};

// Share of the records satisfying `z` that sit in a class (exact cell
// equality over `q`) whose members all satisfy `z`. The predicate's attribute
// must be point-valued; no satisfying record is an error.
absl::StatusOr<double> AttributeDisclosureRisk(const Dataset& d,
                                               const AttributeSet& q,
                                               const ValuePredicate& z);

}  // namespace anonkit

#endif  // ANONKIT_RISK_H_
