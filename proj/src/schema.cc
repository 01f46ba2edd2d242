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

#include "anonkit/schema.h"

#include <algorithm>
#include <set>

#include "absl/strings/str_cat.h"

namespace anonkit {

absl::string_view RoleName(Role role) {
  switch (role) {
    case Role::kQuasiIdentifier:
      return "quasi_identifier";
    case Role::kConfidential:
      return "confidential";
  }
  return "unknown";
}

absl::string_view FeatureGroupName(FeatureGroup group) {
  switch (group) {
    case FeatureGroup::kNone:
      return "none";
    case FeatureGroup::kSpatial:
      return "spatial";
    case FeatureGroup::kCensus:
      return "census";
    case FeatureGroup::kTemporal:
      return "temporal";
  }
  return "unknown";
}

absl::StatusOr<Role> ParseRole(absl::string_view name) {
  if (name == "quasi_identifier" || name == "qi") return Role::kQuasiIdentifier;
  if (name == "confidential") return Role::kConfidential;
  return absl::InvalidArgumentError(absl::StrCat("unknown role '", name, "'"));
}

absl::StatusOr<FeatureGroup> ParseFeatureGroup(absl::string_view name) {
  if (name == "none") return FeatureGroup::kNone;
  if (name == "spatial") return FeatureGroup::kSpatial;
  if (name == "census") return FeatureGroup::kCensus;
  if (name == "temporal") return FeatureGroup::kTemporal;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown feature group '", name, "'"));
}

bool operator==(const AttributeSchema& a, const AttributeSchema& b) {
  return a.name == b.name && a.role == b.role && a.group == b.group &&
         a.dmin == b.dmin && a.dmax == b.dmax && a.digit_width == b.digit_width;
}

absl::StatusOr<Schema> Schema::Create(std::vector<AttributeSchema> attributes) {
  std::set<std::string, std::less<>> seen;
  for (const AttributeSchema& a : attributes) {
    if (a.name.empty()) {
      return absl::InvalidArgumentError("attribute with empty name");
    }
    if (a.name.find_first_of(",\n\r") != std::string::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute name '", a.name,
                       "' contains a delimiter character"));
    }
    if (!seen.insert(a.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate attribute name '", a.name, "'"));
    }
    if (a.dmin > a.dmax) {
      return absl::InvalidArgumentError(absl::StrCat(
          "attribute '", a.name, "': domain min ", a.dmin, " > max ", a.dmax));
    }
    if (a.digit_width.has_value()) {
      const int w = *a.digit_width;
      if (w < 1 || w > 18) {
        return absl::InvalidArgumentError(absl::StrCat(
            "attribute '", a.name, "': digit width ", w, " outside [1, 18]"));
      }
      if (a.dmin < 0 || std::to_string(a.dmax).size() > static_cast<size_t>(w)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "attribute '", a.name, "': domain [", a.dmin, ", ", a.dmax,
            "] does not fit ", w, " nonnegative digits"));
      }
    }
  }
  return Schema(std::move(attributes));
}

std::optional<std::size_t> Schema::IndexOf(absl::string_view name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name == name) return i;
  }
  return std::nullopt;
}

absl::StatusOr<std::size_t> Schema::RequireIndex(absl::string_view name) const {
  std::optional<std::size_t> i = IndexOf(name);
  if (!i.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown attribute '", name, "'"));
  }
  return *i;
}

AttributeSet Schema::QuasiIdentifiers() const { return QuasiIdentifiers({}); }

AttributeSet Schema::QuasiIdentifiers(
    const std::vector<FeatureGroup>& groups) const {
  AttributeSet out;
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    const AttributeSchema& a = attributes_[i];
    if (!a.is_quasi_identifier()) continue;
    if (!groups.empty() &&
        std::find(groups.begin(), groups.end(), a.group) == groups.end()) {
      continue;
    }
    out.push_back(i);
  }
  return out;
}

absl::StatusOr<AttributeSet> Schema::ResolveNames(
    const std::vector<std::string>& names) const {
  AttributeSet out;
  for (const std::string& n : names) {
    auto i = RequireIndex(n);
    if (!i.ok()) return i.status();
    out.push_back(*i);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> Schema::Names(const AttributeSet& set) const {
  std::vector<std::string> out;
  out.reserve(set.size());
  for (std::size_t i : set) out.push_back(attributes_[i].name);
  return out;
}

bool Schema::operator==(const Schema& other) const {
  return attributes_ == other.attributes_;
}

absl::Status ValidateAttributeSet(const Schema& schema,
                                  const AttributeSet& set) {
  if (set.empty()) {
    return absl::InvalidArgumentError("attribute set is empty");
  }
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (set[k] >= schema.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute index ", set[k], " out of range"));
    }
    if (k > 0 && set[k] <= set[k - 1]) {
      return absl::InvalidArgumentError(
          "attribute set must be sorted and duplicate-free");
    }
  }
  return absl::OkStatus();
}

}  // namespace anonkit
