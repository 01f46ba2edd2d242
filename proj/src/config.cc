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

#include "anonkit/config.h"

#include <algorithm>
#include <cmath>
#include <exception>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "anonkit/status_macros.h"
#include "json.hpp"

namespace anonkit {
namespace {

using nlohmann::json;

absl::Status ConfigError(absl::string_view where, absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat("config: ", where, ": ", what));
}

absl::StatusOr<int64_t> GetInt(const json& j, absl::string_view where) {
  if (!j.is_number_integer()) return ConfigError(where, "expected an integer");
  return j.get<int64_t>();
}

absl::StatusOr<std::vector<int64_t>> GetIntList(const json& j,
                                                absl::string_view where) {
  if (!j.is_array()) return ConfigError(where, "expected an array");
  std::vector<int64_t> out;
  for (const json& v : j) {
    ASSIGN_OR_RETURN(int64_t x, GetInt(v, where));
    out.push_back(x);
  }
  return out;
}

absl::StatusOr<std::string> GetString(const json& j, absl::string_view where) {
  if (!j.is_string()) return ConfigError(where, "expected a string");
  return j.get<std::string>();
}

absl::Status CheckKeys(const json& obj, absl::string_view where,
                       std::initializer_list<absl::string_view> allowed) {
  if (!obj.is_object()) return ConfigError(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      return ConfigError(where, absl::StrCat("unknown key \"", key, "\""));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<AttributeSchema> ParseAttribute(const json& j,
                                               absl::string_view where) {
  RETURN_IF_ERROR(CheckKeys(
      j, where, {"name", "role", "group", "domain", "digit_width"}));
  AttributeSchema attr;
  if (!j.contains("name")) return ConfigError(where, "missing \"name\"");
  ASSIGN_OR_RETURN(attr.name, GetString(j["name"], where));
  std::string w = absl::StrCat(where, " (", attr.name, ")");
  if (!j.contains("role")) return ConfigError(w, "missing \"role\"");
  ASSIGN_OR_RETURN(std::string role, GetString(j["role"], w));
  ASSIGN_OR_RETURN(attr.role, ParseRole(role));
  if (j.contains("group")) {
    ASSIGN_OR_RETURN(std::string group, GetString(j["group"], w));
    ASSIGN_OR_RETURN(attr.group, ParseFeatureGroup(group));
  }
  if (!j.contains("domain")) return ConfigError(w, "missing \"domain\"");
  ASSIGN_OR_RETURN(std::vector<int64_t> domain, GetIntList(j["domain"], w));
  if (domain.size() != 2) return ConfigError(w, "domain must be [min, max]");
  attr.dmin = domain[0];
  attr.dmax = domain[1];
  if (j.contains("digit_width")) {
    ASSIGN_OR_RETURN(int64_t width, GetInt(j["digit_width"], w));
    attr.digit_width = static_cast<int>(width);
  }
  return attr;
}

absl::StatusOr<MaskingStep> ParseStep(const json& j, const Schema& schema,
                                      absl::string_view where) {
  RETURN_IF_ERROR(CheckKeys(j, where,
                            {"attribute", "action", "buckets", "digits",
                             "only_values", "label"}));
  MaskingStep step;
  if (!j.contains("attribute")) return ConfigError(where, "missing \"attribute\"");
  ASSIGN_OR_RETURN(std::string name, GetString(j["attribute"], where));
  ASSIGN_OR_RETURN(step.attribute, schema.RequireIndex(name));
  if (!j.contains("action")) return ConfigError(where, "missing \"action\"");
  ASSIGN_OR_RETURN(std::string action, GetString(j["action"], where));
  if (action == "coarsen") {
    step.action = MaskAction::kCoarsen;
    if (!j.contains("buckets") || !j["buckets"].is_array()) {
      return ConfigError(where, "coarsen needs \"buckets\"");
    }
    for (const json& b : j["buckets"]) {
      ASSIGN_OR_RETURN(std::vector<int64_t> pair, GetIntList(b, where));
      if (pair.size() == 1) pair.push_back(pair[0]);
      if (pair.size() != 2) return ConfigError(where, "bucket must be [lo, hi]");
      step.buckets.emplace_back(pair[0], pair[1]);
    }
  } else if (action == "suppress") {
    step.action = MaskAction::kSuppress;
    if (j.contains("only_values")) {
      ASSIGN_OR_RETURN(step.only_values, GetIntList(j["only_values"], where));
      std::sort(step.only_values.begin(), step.only_values.end());
      step.only_values.erase(
          std::unique(step.only_values.begin(), step.only_values.end()),
          step.only_values.end());
    }
  } else if (action == "truncate_digits") {
    step.action = MaskAction::kTruncateDigits;
    if (!j.contains("digits")) return ConfigError(where, "missing \"digits\"");
    ASSIGN_OR_RETURN(int64_t digits, GetInt(j["digits"], where));
    step.digits = static_cast<int>(digits);
  } else {
    return ConfigError(where, absl::StrCat("unknown action \"", action, "\""));
  }
  if (j.contains("label")) {
    ASSIGN_OR_RETURN(step.label, GetString(j["label"], where));
  }
  return step;
}

absl::StatusOr<PredicateSpec> ParsePredicate(const json& j,
                                             absl::string_view where) {
  RETURN_IF_ERROR(CheckKeys(
      j, where, {"name", "attribute", "min", "max", "values", "top_fraction"}));
  PredicateSpec p;
  if (!j.contains("name")) return ConfigError(where, "missing \"name\"");
  ASSIGN_OR_RETURN(p.name, GetString(j["name"], where));
  if (p.name.empty() ||
      p.name.find_first_of(",\n\r") != std::string::npos) {
    return ConfigError(where, "predicate name must be nonempty, no commas");
  }
  if (!j.contains("attribute")) return ConfigError(where, "missing \"attribute\"");
  ASSIGN_OR_RETURN(p.attribute, GetString(j["attribute"], where));
  if (j.contains("min")) {
    ASSIGN_OR_RETURN(int64_t v, GetInt(j["min"], where));
    p.min = v;
  }
  if (j.contains("max")) {
    ASSIGN_OR_RETURN(int64_t v, GetInt(j["max"], where));
    p.max = v;
  }
  if (j.contains("values")) {
    ASSIGN_OR_RETURN(p.values, GetIntList(j["values"], where));
    std::sort(p.values.begin(), p.values.end());
    p.values.erase(std::unique(p.values.begin(), p.values.end()),
                   p.values.end());
  }
  if (j.contains("top_fraction")) {
    if (!j["top_fraction"].is_number()) {
      return ConfigError(where, "top_fraction must be a number");
    }
    double f = j["top_fraction"].get<double>();
    if (!(f > 0.0 && f <= 1.0)) {
      return ConfigError(where, "top_fraction must be in (0, 1]");
    }
    p.top_fraction = f;
  }
  if (!p.min && !p.max && p.values.empty() && !p.top_fraction) {
    return ConfigError(where, "predicate needs min, max, values or top_fraction");
  }
  if (p.top_fraction && (p.min || p.max || !p.values.empty())) {
    return ConfigError(where, "top_fraction cannot be combined with bounds");
  }
  if (p.min && p.max && *p.min > *p.max) {
    return ConfigError(where, "min > max");
  }
  return p;
}

absl::StatusOr<AnonkitConfig> ParseConfig(const json& root) {
  RETURN_IF_ERROR(CheckKeys(root, "top level",
                            {"attributes", "masking_order",
                             "disclosure_predicates", "closeness_attribute"}));
  if (!root.contains("attributes") || !root["attributes"].is_array()) {
    return ConfigError("top level", "missing \"attributes\" array");
  }
  std::vector<AttributeSchema> attrs;
  std::size_t i = 0;
  for (const json& a : root["attributes"]) {
    ASSIGN_OR_RETURN(AttributeSchema attr,
                     ParseAttribute(a, absl::StrCat("attributes[", i++, "]")));
    attrs.push_back(std::move(attr));
  }
  AnonkitConfig config;
  ASSIGN_OR_RETURN(config.schema, Schema::Create(std::move(attrs)));
  if (root.contains("masking_order")) {
    if (!root["masking_order"].is_array()) {
      return ConfigError("masking_order", "expected an array");
    }
    i = 0;
    for (const json& s : root["masking_order"]) {
      ASSIGN_OR_RETURN(MaskingStep step,
                       ParseStep(s, config.schema,
                                 absl::StrCat("masking_order[", i++, "]")));
      config.masking_order.steps.push_back(std::move(step));
    }
    RETURN_IF_ERROR(ValidateMaskingOrder(config.schema, config.masking_order));
  }
  if (root.contains("disclosure_predicates")) {
    if (!root["disclosure_predicates"].is_array()) {
      return ConfigError("disclosure_predicates", "expected an array");
    }
    i = 0;
    for (const json& p : root["disclosure_predicates"]) {
      std::string where = absl::StrCat("disclosure_predicates[", i++, "]");
      ASSIGN_OR_RETURN(PredicateSpec spec, ParsePredicate(p, where));
      RETURN_IF_ERROR(config.schema.RequireIndex(spec.attribute).status());
      for (const PredicateSpec& other : config.predicates) {
        if (other.name == spec.name) {
          return ConfigError(where, "duplicate predicate name");
        }
      }
      config.predicates.push_back(std::move(spec));
    }
  }
  if (root.contains("closeness_attribute")) {
    ASSIGN_OR_RETURN(std::string name, GetString(root["closeness_attribute"],
                                                 "closeness_attribute"));
    config.closeness_attribute = name;
  }
  RETURN_IF_ERROR(ClosenessAttribute(config).status());
  return config;
}

absl::string_view ActionName(MaskAction action) {
  switch (action) {
    case MaskAction::kCoarsen:
      return "coarsen";
    case MaskAction::kSuppress:
      return "suppress";
    case MaskAction::kTruncateDigits:
      return "truncate_digits";
  }
  return "unknown";
}

}  // namespace

absl::StatusOr<AnonkitConfig> ParseConfigJson(absl::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const std::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("config: malformed JSON: ", e.what()));
  }
  return ParseConfig(root);
}

std::string ConfigToJson(const AnonkitConfig& config) {
  nlohmann::ordered_json root;
  nlohmann::ordered_json attrs = nlohmann::ordered_json::array();
  for (const AttributeSchema& a : config.schema.attributes()) {
    nlohmann::ordered_json j;
    j["name"] = a.name;
    j["role"] = std::string(RoleName(a.role));
    if (a.group != FeatureGroup::kNone) {
      j["group"] = std::string(FeatureGroupName(a.group));
    }
    j["domain"] = {a.dmin, a.dmax};
    if (a.digit_width) j["digit_width"] = *a.digit_width;
    attrs.push_back(std::move(j));
  }
  root["attributes"] = std::move(attrs);
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const MaskingStep& s : config.masking_order.steps) {
    nlohmann::ordered_json j;
    j["attribute"] = config.schema.attribute(s.attribute).name;
    j["action"] = std::string(ActionName(s.action));
    switch (s.action) {
      case MaskAction::kCoarsen: {
        nlohmann::ordered_json buckets = nlohmann::ordered_json::array();
        for (const auto& [lo, hi] : s.buckets) buckets.push_back({lo, hi});
        j["buckets"] = std::move(buckets);
        break;
      }
      case MaskAction::kSuppress:
        if (!s.only_values.empty()) j["only_values"] = s.only_values;
        break;
      case MaskAction::kTruncateDigits:
        j["digits"] = s.digits;
        break;
    }
    if (!s.label.empty()) j["label"] = s.label;
    steps.push_back(std::move(j));
  }
  root["masking_order"] = std::move(steps);
  nlohmann::ordered_json preds = nlohmann::ordered_json::array();
  for (const PredicateSpec& p : config.predicates) {
    nlohmann::ordered_json j;
    j["name"] = p.name;
    j["attribute"] = p.attribute;
    if (p.min) j["min"] = *p.min;
    if (p.max) j["max"] = *p.max;
    if (!p.values.empty()) j["values"] = p.values;
    if (p.top_fraction) j["top_fraction"] = *p.top_fraction;
    preds.push_back(std::move(j));
  }
  root["disclosure_predicates"] = std::move(preds);
  if (config.closeness_attribute) {
    root["closeness_attribute"] = *config.closeness_attribute;
  }
  return root.dump(2) + "\n";
}

absl::StatusOr<ValuePredicate> ResolvePredicate(const PredicateSpec& spec,
                                                const Dataset& d) {
  ASSIGN_OR_RETURN(std::size_t a, d.schema().RequireIndex(spec.attribute));
  ValuePredicate z;
  z.attribute = a;
  z.min = spec.min;
  z.max = spec.max;
  z.values = spec.values;
  if (spec.top_fraction) {
    RETURN_IF_ERROR(RequirePoints(d, AttributeSet{a}, "top_fraction predicate"));
    std::size_t n = d.num_records();
    if (n == 0) {
      return absl::FailedPreconditionError(absl::StrCat(
          "predicate ", spec.name, ": no records to derive a threshold"));
    }
    std::vector<int64_t> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = d.cell(i, a).value();
    // Threshold at the value ranked ceil(f*n) from the top.
    std::size_t take = static_cast<std::size_t>(
        std::ceil(*spec.top_fraction * static_cast<double>(n) - 1e-9));
    take = std::clamp<std::size_t>(take, 1, n);
    std::nth_element(values.begin(), values.begin() + (n - take), values.end());
    z.min = values[n - take];
  }
  return z;
}

absl::StatusOr<std::size_t> ClosenessAttribute(const AnonkitConfig& config) {
  const Schema& schema = config.schema;
  if (config.closeness_attribute) {
    ASSIGN_OR_RETURN(std::size_t a,
                     schema.RequireIndex(*config.closeness_attribute));
    if (schema.attribute(a).is_quasi_identifier()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "config: closeness_attribute ", *config.closeness_attribute,
          " must be confidential"));
    }
    return a;
  }
  for (std::size_t a = 0; a < schema.size(); ++a) {
    if (!schema.attribute(a).is_quasi_identifier()) return a;
  }
  return absl::InvalidArgumentError(
      "config: no confidential attribute for t-closeness");
}

absl::StatusOr<std::vector<FeatureGroup>> ParseGroupList(absl::string_view csv) {
  std::vector<FeatureGroup> groups;
  csv = absl::StripAsciiWhitespace(csv);
  if (csv.empty() || csv == "all") return groups;
  for (absl::string_view part : absl::StrSplit(csv, ',')) {
    part = absl::StripAsciiWhitespace(part);
    ASSIGN_OR_RETURN(FeatureGroup g, ParseFeatureGroup(part));
    if (g == FeatureGroup::kNone) {
      return absl::InvalidArgumentError("group \"none\" selects nothing");
    }
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) {
      groups.push_back(g);
    }
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

std::string GroupListName(const std::vector<FeatureGroup>& groups) {
  if (groups.empty()) return "all";
  std::string out;
  for (FeatureGroup g : groups) {
    if (!out.empty()) out += '+';
    absl::StrAppend(&out, FeatureGroupName(g));
  }
  return out;
}

}  // namespace anonkit
