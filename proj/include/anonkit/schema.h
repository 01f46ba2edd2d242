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

#ifndef ANONKIT_SCHEMA_H_
#define ANONKIT_SCHEMA_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace anonkit {

enum class Role { kQuasiIdentifier, kConfidential };

// Attacker-knowledge grouping of quasi-identifiers.
enum class FeatureGroup { kNone, kSpatial, kCensus, kTemporal };

absl::string_view RoleName(Role role);
absl::string_view FeatureGroupName(FeatureGroup group);
absl::StatusOr<Role> ParseRole(absl::string_view name);
absl::StatusOr<FeatureGroup> ParseFeatureGroup(absl::string_view name);

// One column of a dataset. All attributes are integers or integer-coded with
// a declared inclusive domain [dmin, dmax].
struct AttributeSchema {
  std::string name;
  Role role = Role::kQuasiIdentifier;
  FeatureGroup group = FeatureGroup::kNone;
  int64_t dmin = 0;
  int64_t dmax = 0;
  // Fixed number of decimal digits, required for digit-prefix wildcards
  // such as "937**".
  std::optional<int> digit_width;

  // Number of integers in the domain.
  uint64_t DomainWidth() const {
    return static_cast<uint64_t>(dmax - dmin) + 1;
  }
  bool InDomain(int64_t v) const { return dmin <= v && v <= dmax; }
  bool is_quasi_identifier() const { return role == Role::kQuasiIdentifier; }
};

// Positional attribute indices, kept sorted and duplicate-free.
using AttributeSet = std::vector<std::size_t>;

class Schema {
 public:
  Schema() = default;

  // Validates names (nonempty, distinct) and domains (dmin <= dmax, digit
  // widths large enough to hold dmax).
  static absl::StatusOr<Schema> Create(std::vector<AttributeSchema> attributes);

  std::size_t size() const { return attributes_.size(); }
  const AttributeSchema& attribute(std::size_t i) const {
    return attributes_[i];
  }
  const std::vector<AttributeSchema>& attributes() const {
    return attributes_;
  }

  std::optional<std::size_t> IndexOf(absl::string_view name) const;
  absl::StatusOr<std::size_t> RequireIndex(absl::string_view name) const;

  // All quasi-identifiers, in schema order.
  AttributeSet QuasiIdentifiers() const;
  // Quasi-identifiers whose group is in `groups`. An empty selection means
  // every quasi-identifier.
  AttributeSet QuasiIdentifiers(const std::vector<FeatureGroup>& groups) const;

  absl::StatusOr<AttributeSet> ResolveNames(
      const std::vector<std::string>& names) const;
  std::vector<std::string> Names(const AttributeSet& set) const;

  bool operator==(const Schema& other) const;

 private:
  explicit Schema(std::vector<AttributeSchema> attributes)
      : attributes_(std::move(attributes)) {}

  std::vector<AttributeSchema> attributes_;
};

bool operator==(const AttributeSchema& a, const AttributeSchema& b);

// Rejects empty sets, out-of-range indices and duplicates.
absl::Status ValidateAttributeSet(const Schema& schema,
                                  const AttributeSet& set);

}  // namespace anonkit

#endif  // ANONKIT_SCHEMA_H_
