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

#include "anonkit/coarsening.h"

#include "absl/strings/str_cat.h"
#include "anonkit/status_macros.h"

namespace anonkit {
namespace {

using u128 = unsigned __int128;

absl::Status CheckResolution(const AttributeSchema& attr, uint64_t r) {
  if (r < 1 || r > attr.DomainWidth()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "resolution ", r, " for '", attr.name, "' outside [1, ",
        attr.DomainWidth(), "]"));
  }
  return absl::OkStatus();
}

// Offset of the i-th subinterval start from dmin.
uint64_t StartOffset(uint64_t i, uint64_t width, uint64_t r) {
  return static_cast<uint64_t>(static_cast<u128>(i) * width / r);
}

// Index of the subinterval holding offset v from dmin: the largest j with
// floor(j * W / r) <= v, i.e. floor(((v + 1) * r - 1) / W).
uint64_t IntervalIndex(uint64_t v, uint64_t width, uint64_t r) {
  return static_cast<uint64_t>(
      ((static_cast<u128>(v) + 1) * r - 1) / width);
}

}  // namespace

absl::StatusOr<std::vector<std::pair<int64_t, int64_t>>> CoarseningIntervals(
    const AttributeSchema& attr, uint64_t resolution) {
  RETURN_IF_ERROR(CheckResolution(attr, resolution));
  const uint64_t w = attr.DomainWidth();
  std::vector<std::pair<int64_t, int64_t>> out;
  out.reserve(resolution);
  for (uint64_t i = 0; i < resolution; ++i) {
    const uint64_t begin = StartOffset(i, w, resolution);
    const uint64_t end = StartOffset(i + 1, w, resolution) - 1;
    out.emplace_back(attr.dmin + static_cast<int64_t>(begin),
                     attr.dmin + static_cast<int64_t>(end));
  }
  return out;
}

uint64_t ResolutionForFraction(const AttributeSchema& attr,
                               uint64_t denominator) {
  return std::min<uint64_t>(std::max<uint64_t>(denominator, 1),
                            attr.DomainWidth());
}

absl::StatusOr<Dataset> Coarsen(const Dataset& d, const CoarseningSpec& spec) {
  const Schema& schema = d.schema();
  for (const auto& [a, r] : spec.resolution) {
    if (a >= schema.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute index ", a, " out of range"));
    }
    if (!schema.attribute(a).is_quasi_identifier()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "coarsening applies to quasi-identifiers only; '",
          schema.attribute(a).name, "' is confidential"));
    }
    RETURN_IF_ERROR(CheckResolution(schema.attribute(a), r));
  }
  AttributeSet touched;
  for (const auto& [a, r] : spec.resolution) touched.push_back(a);
  RETURN_IF_ERROR(RequirePoints(d, touched, "coarsening"));

  Dataset out = d;
  for (const auto& [a, r] : spec.resolution) {
    const AttributeSchema& attr = schema.attribute(a);
    const uint64_t w = attr.DomainWidth();
    for (std::size_t i = 0; i < out.num_records(); ++i) {
      const uint64_t v = static_cast<uint64_t>(out.cell(i, a).value() - attr.dmin);
      const uint64_t j = IntervalIndex(v, w, r);
      const int64_t lo = attr.dmin + static_cast<int64_t>(StartOffset(j, w, r));
      const int64_t hi =
          attr.dmin + static_cast<int64_t>(StartOffset(j + 1, w, r) - 1);
      out.mutable_cell(i, a) = Cell::Interval(lo, hi);
    }
  }
  return out;
}

}  // namespace anonkit
