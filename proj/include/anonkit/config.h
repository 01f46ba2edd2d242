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

#ifndef ANONKIT_CONFIG_H_
#define ANONKIT_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "anonkit/dataset.h"
#include "anonkit/risk.h"
#include "anonkit/safe_harbor.h"
#include "anonkit/schema.h"

namespace anonkit {

// A named disclosure predicate z as written in the config. `top_fraction`
// selects the highest values of the attribute (e.g. 0.1 for the top decile)
// and is turned into a threshold against a concrete dataset.
struct PredicateSpec {
  std::string name;
  std::string attribute;
  std::optional<int64_t> min;
  std::optional<int64_t> max;
  std::vector<int64_t> values;
  std::optional<double> top_fraction;
};

// Everything the data files do not carry: roles, groups, domains, digit
// widths, the safe-harbor masking order and the disclosure predicates.
struct AnonkitConfig {
  Schema schema;
  MaskingOrder masking_order;
  std::vector<PredicateSpec> predicates;
  // Attribute balanced by t-closeness; defaults to the first confidential
  // attribute.
  std::optional<std::string> closeness_attribute;
};

// JSON document:
//
//   {
//     "attributes": [{"name": "age_yrs", "role": "quasi_identifier",
//                     "group": "census", "domain": [0, 85]}, ...],
//     "masking_order": [{"attribute": "age_yrs", "action": "coarsen",
//                        "buckets": [[0, 0], [1, 4], ...]}, ...],
//     "disclosure_predicates": [{"name": "charges_over_100k",
//                                "attribute": "charge", "min": 100001}],
//     "closeness_attribute": "charge"
//   }
absl::StatusOr<AnonkitConfig> ParseConfigJson(absl::string_view text);
std::string ConfigToJson(const AnonkitConfig& config);

absl::StatusOr<ValuePredicate> ResolvePredicate(const PredicateSpec& spec,
                                                const Dataset& d);

absl::StatusOr<std::size_t> ClosenessAttribute(const AnonkitConfig& config);

absl::StatusOr<std::vector<FeatureGroup>> ParseGroupList(absl::string_view csv);
std::string GroupListName(const std::vector<FeatureGroup>& groups);

}  // namespace anonkit

#endif  // ANONKIT_CONFIG_H_
