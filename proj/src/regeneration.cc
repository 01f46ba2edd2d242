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

#include "anonkit/regeneration.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <random>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "anonkit/random.h"
#include "anonkit/status_macros.h"

namespace anonkit {
namespace {

// Sorted support with cumulative weights, so any covered range maps to a
// contiguous slice.
struct Sampler {
  std::vector<int64_t> values;
  std::vector<double> cumulative;  // cumulative[i] = sum of weights [0, i].
};

absl::StatusOr<Sampler> BuildSampler(
    std::vector<std::pair<int64_t, double>> weights) {
  std::sort(weights.begin(), weights.end());
  Sampler s;
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto& [v, w] = weights[i];
    if (!(w >= 0.0) || !std::isfinite(w)) {
      return absl::InvalidArgumentError(
          absl::StrCat("weight of value ", v, " must be finite and >= 0"));
    }
    if (!s.values.empty() && s.values.back() == v) {
      total += w;
      s.cumulative.back() = total;
      continue;
    }
    total += w;
    s.values.push_back(v);
    s.cumulative.push_back(total);
  }
  return s;
}

}  // namespace

absl::StatusOr<MaskedValueDistributions> ParseDistributionsCsv(
    absl::string_view text, const Schema& schema) {
  MaskedValueDistributions out;
  std::size_t line_no = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_no;
    absl::ConsumeSuffix(&line, "\r");
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "attribute,value,weight") {
        return absl::InvalidArgumentError(
            "line 1: expected header 'attribute,value,weight'");
      }
      continue;
    }
    std::vector<absl::string_view> f = absl::StrSplit(line, ',');
    if (f.size() != 3) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": expected 3 fields"));
    }
    std::optional<std::size_t> a = schema.IndexOf(f[0]);
    if (!a.has_value()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": unknown attribute '", f[0], "'"));
    }
    int64_t v = 0;
    auto [vp, vec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), v);
    double w = 0.0;
    auto [wp, wec] = std::from_chars(f[2].data(), f[2].data() + f[2].size(), w);
    if (vec != std::errc() || vp != f[1].data() + f[1].size() ||
        wec != std::errc() || wp != f[2].data() + f[2].size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": malformed value or weight"));
    }
    if (!schema.attribute(*a).InDomain(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": value ", v, " outside domain"));
    }
    if (!std::isfinite(w) || w < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": weight must be finite and >= 0"));
    }
    out[*a].emplace_back(v, w);
  }
  return out;
}

std::string DistributionsToCsv(const MaskedValueDistributions& dists,
                               const Schema& schema) {
  std::string out = "attribute,value,weight\n";
  for (const auto& [a, weights] : dists) {
    for (const auto& [v, w] : weights) {
      absl::StrAppend(&out, schema.attribute(a).name, ",", v, ",", w, "\n");
    }
  }
  return out;
}

absl::StatusOr<Dataset> RegenerateMasked(
    const Dataset& d, const MaskedValueDistributions& distributions,
    uint64_t seed) {
  std::map<std::size_t, Sampler> samplers;
  for (const auto& [a, weights] : distributions) {
    if (a >= d.num_attributes()) {
      return absl::InvalidArgumentError("distribution attribute out of range");
    }
    ASSIGN_OR_RETURN(samplers[a], BuildSampler(weights));
  }

  Dataset out = d;
  std::mt19937_64 rng(seed);
  std::vector<std::string> failures;
  std::size_t failure_count = 0;
  for (std::size_t i = 0; i < out.num_records(); ++i) {
    for (std::size_t a = 0; a < out.num_attributes(); ++a) {
      const Cell c = out.cell(i, a);
      if (c.is_point()) continue;
      const std::string& name = d.schema().attribute(a).name;
      auto it = samplers.find(a);
      if (it == samplers.end()) {
        ++failure_count;
        if (failures.size() < 20) {
          failures.push_back(absl::StrCat("record ", d.original_index(i), " '",
                                          name, "': no distribution"));
        }
        continue;
      }
      const Sampler& s = it->second;
      const std::size_t first =
          std::lower_bound(s.values.begin(), s.values.end(), c.lo()) -
          s.values.begin();
      const std::size_t last =
          std::upper_bound(s.values.begin(), s.values.end(), c.hi()) -
          s.values.begin();
      const double base = first == 0 ? 0.0 : s.cumulative[first - 1];
      const double mass = last == 0 ? 0.0 : s.cumulative[last - 1] - base;
      if (first >= last || !(mass > 0.0)) {
        ++failure_count;
        if (failures.size() < 20) {
          failures.push_back(absl::StrCat(
              "record ", d.original_index(i), " '", name,
              "': no mass on ", FormatCell(c, d.schema().attribute(a))));
        }
        continue;
      }
      const double target = base + UnitDraw(rng) * mass;
      std::size_t pick =
          std::upper_bound(s.cumulative.begin() + first,
                           s.cumulative.begin() + last, target) -
          s.cumulative.begin();
      if (pick >= last) pick = last - 1;
      // Skip zero-weight values that a boundary draw could land on.
      while (pick > first && s.cumulative[pick] == s.cumulative[pick - 1]) {
        --pick;
      }
      out.mutable_cell(i, a) = Cell::Point(s.values[pick]);
    }
  }
  if (failure_count > 0) {
    std::string msg = absl::StrCat(failure_count,
                                   " masked cells cannot be regenerated: ");
    for (std::size_t f = 0; f < failures.size(); ++f) {
      absl::StrAppend(&msg, f == 0 ? "" : "; ", failures[f]);
    }
    if (failure_count > failures.size()) absl::StrAppend(&msg, "; ...");
    return absl::FailedPreconditionError(msg);
  }
  return out;
}

}  // namespace anonkit
