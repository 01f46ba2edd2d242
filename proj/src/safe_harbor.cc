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

#include "anonkit/safe_harbor.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "anonkit/status_macros.h"

namespace anonkit {

absl::Status ValidateMaskingOrder(const Schema& schema,
                                  const MaskingOrder& order) {
  for (std::size_t s = 0; s < order.steps.size(); ++s) {
    const MaskingStep& step = order.steps[s];
    const std::string where = absl::StrCat("masking step ", s + 1);
    if (step.attribute >= schema.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ": attribute index out of range"));
    }
    const AttributeSchema& attr = schema.attribute(step.attribute);
    if (!attr.is_quasi_identifier()) {
      return absl::InvalidArgumentError(absl::StrCat(
          where, ": '", attr.name, "' is not a quasi-identifier"));
    }
    switch (step.action) {
      case MaskAction::kCoarsen: {
        if (step.buckets.empty()) {
          return absl::InvalidArgumentError(
              absl::StrCat(where, ": coarsening without buckets"));
        }
        int64_t expected = attr.dmin;
        for (const auto& [lo, hi] : step.buckets) {
          if (lo != expected || hi < lo) {
            return absl::InvalidArgumentError(absl::StrCat(
                where, ": buckets of '", attr.name,
                "' must be contiguous and ascending from ", attr.dmin));
          }
          expected = hi + 1;
        }
        if (step.buckets.back().second != attr.dmax) {
          return absl::InvalidArgumentError(absl::StrCat(
              where, ": buckets of '", attr.name, "' end at ",
              step.buckets.back().second, ", domain ends at ", attr.dmax));
        }
        break;
      }
      case MaskAction::kSuppress:
        if (!std::is_sorted(step.only_values.begin(), step.only_values.end())) {
          return absl::InvalidArgumentError(
              absl::StrCat(where, ": suppression values must be sorted"));
        }
        break;
      case MaskAction::kTruncateDigits:
        if (!attr.digit_width.has_value() || step.digits < 1 ||
            step.digits >= *attr.digit_width) {
          return absl::InvalidArgumentError(absl::StrCat(
              where, ": cannot mask ", step.digits, " digits of '", attr.name,
              "'"));
        }
        break;
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Cell> ApplyMaskingStep(const Cell& cell, const MaskingStep& step,
                                      const AttributeSchema& attr) {
  if (cell.kind() == CellKind::kWildcard) return cell;
  switch (step.action) {
    case MaskAction::kCoarsen: {
      int64_t lo = cell.lo();
      int64_t hi = cell.hi();
      bool touched = false;
      for (const auto& [blo, bhi] : step.buckets) {
        if (bhi < cell.lo() || blo > cell.hi()) continue;
        lo = touched ? std::min(lo, blo) : blo;
        hi = touched ? std::max(hi, bhi) : bhi;
        touched = true;
      }
      if (!touched) {
        return absl::OutOfRangeError(absl::StrCat(
            "no bucket of '", attr.name, "' holds ", FormatCell(cell, attr)));
      }
      if (lo == cell.lo() && hi == cell.hi()) return cell;
      return Cell::Interval(lo, hi);
    }
    case MaskAction::kSuppress:
      if (!step.only_values.empty() &&
          (!cell.is_point() ||
           !std::binary_search(step.only_values.begin(), step.only_values.end(),
                               cell.value()))) {
        return cell;
      }
      return Cell::Wildcard(attr);
    case MaskAction::kTruncateDigits: {
      if (cell.kind() == CellKind::kPrefixWildcard &&
          cell.masked_digits() >= step.digits) {
        return cell;
      }
      const int64_t block = static_cast<int64_t>(PowerOfTen(step.digits));
      if (cell.lo() / block != cell.hi() / block) return Cell::Wildcard(attr);
      return Cell::MaskTrailingDigits(cell.lo(), step.digits, attr);
    }
  }
  return absl::InternalError("unknown masking action");
}

absl::StatusOr<SafeHarborResult> SafeHarborMask(
    const Dataset& d, const MaskingOrder& order, const AttributeSet& q,
    const UniquenessOptions& options) {
  RETURN_IF_ERROR(ValidateAttributeSet(d.schema(), q));
  RETURN_IF_ERROR(ValidateMaskingOrder(d.schema(), order));
  RETURN_IF_ERROR(RequirePoints(d, q, "safe-harbor masking"));

  SafeHarborResult result;
  result.dataset = d;
  result.steps_consumed.assign(d.num_records(), 0);
  Dataset& current = result.dataset;

  std::vector<std::size_t> pending;
  {
    WorstCaseUniqueness eval(current, q, options);
    ASSIGN_OR_RETURN(pending, eval.UniqueRecords());
  }
  while (!pending.empty()) {
    bool advanced = false;
    for (std::size_t r : pending) {
      uint32_t& next = result.steps_consumed[r];
      // Steps that leave the cell as is do not count as masking.
      while (next < order.steps.size()) {
        const MaskingStep& step = order.steps[next++];
        const AttributeSchema& attr = current.schema().attribute(step.attribute);
        absl::StatusOr<Cell> masked =
            ApplyMaskingStep(current.cell(r, step.attribute), step, attr);
        if (!masked.ok()) {
          return absl::Status(masked.status().code(),
                              absl::StrCat("record ", current.original_index(r),
                                           ": ", masked.status().message()));
        }
        if (*masked != current.cell(r, step.attribute)) {
          current.mutable_cell(r, step.attribute) = *masked;
          advanced = true;
          break;
        }
      }
    }
    if (!advanced) break;
    ++result.passes;
    WorstCaseUniqueness eval(current, q, options);
    std::vector<std::size_t> still;
    for (std::size_t r : pending) {
      ASSIGN_OR_RETURN(bool unique, eval.IsUnique(r));
      if (unique) still.push_back(r);
    }
    pending = std::move(still);
  }
  result.residual_records = std::move(pending);
  return result;
}

}  // namespace anonkit
