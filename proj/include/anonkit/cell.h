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

#ifndef ANONKIT_CELL_H_
#define ANONKIT_CELL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "anonkit/schema.h"

namespace anonkit {

enum class CellKind : uint8_t {
  kPoint = 0,
  kInterval = 1,
  kWildcard = 2,
  kPrefixWildcard = 3,
};

// One attribute value of one record: an exact point, a closed integer
// interval, a full wildcard "*" or a digit-prefix wildcard such as "937**".
//
// Every cell stores the closed range [lo, hi] of integers it stands for, so
// coverage tests never need the schema. Wildcards store their attribute's
// domain and prefix wildcards their (domain-clipped) digit block.
class Cell {
 public:
  Cell() = default;

  static Cell Point(int64_t v) { return Cell(CellKind::kPoint, v, v, 0); }

  // Closed interval. A degenerate interval (lo == hi) is normalized to a
  // point, which is how it is rendered in the text format.
  static Cell Interval(int64_t lo, int64_t hi) {
    if (lo == hi) return Point(lo);
    return Cell(CellKind::kInterval, lo, hi, 0);
  }

  static Cell Wildcard(const AttributeSchema& attr) {
    return Cell(CellKind::kWildcard, attr.dmin, attr.dmax, 0);
  }

  // `prefix_digits` is the leading digit string and `masked_count` the number
  // of trailing masked digits; the total must equal the attribute's digit
  // width.
  static absl::StatusOr<Cell> PrefixWildcard(absl::string_view prefix_digits,
                                             int masked_count,
                                             const AttributeSchema& attr);

  // Prefix wildcard that keeps all but the last `masked_count` digits of
  // `value`.
  static absl::StatusOr<Cell> MaskTrailingDigits(int64_t value,
                                                 int masked_count,
                                                 const AttributeSchema& attr);

  CellKind kind() const { return kind_; }
  bool is_point() const { return kind_ == CellKind::kPoint; }
  int64_t lo() const { return lo_; }
  int64_t hi() const { return hi_; }
  // Only meaningful for points.
  int64_t value() const { return lo_; }
  int masked_digits() const { return masked_; }

  uint64_t realization_count() const {
    return static_cast<uint64_t>(hi_ - lo_) + 1;
  }
  bool Covers(int64_t v) const { return lo_ <= v && v <= hi_; }

  // Leading digits of a prefix wildcard, zero-padded to the unmasked width.
  std::string PrefixDigits(const AttributeSchema& attr) const;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;

 private:
  Cell(CellKind kind, int64_t lo, int64_t hi, uint8_t masked)
      : lo_(lo), hi_(hi), kind_(kind), masked_(masked) {}

  int64_t lo_ = 0;
  int64_t hi_ = 0;
  CellKind kind_ = CellKind::kPoint;
  uint8_t masked_ = 0;
};

// Whether `cell` can stand for the in-domain value `v`.
bool Covers(const Cell& cell, int64_t v, const AttributeSchema& attr);

// The exact ordered set of integers `cell` can stand for.
std::vector<int64_t> Realizations(const Cell& cell,
                                  const AttributeSchema& attr);

// Rejects cells that leave the attribute's domain or break the prefix width.
absl::Status ValidateCell(const Cell& cell, const AttributeSchema& attr);

// Text-format rendering: "26", "[24;28]", "*", "937**".
std::string FormatCell(const Cell& cell, const AttributeSchema& attr);
void AppendCell(const Cell& cell, const AttributeSchema& attr,
                std::string* out);

uint64_t PowerOfTen(int exponent);

}  // namespace anonkit

#endif  // ANONKIT_CELL_H_
