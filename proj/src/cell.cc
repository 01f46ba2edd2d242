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

#include "anonkit/cell.h"

#include <algorithm>
#include <charconv>

#include "absl/strings/str_cat.h"

namespace anonkit {

uint64_t PowerOfTen(int exponent) {
  uint64_t p = 1;
  for (int i = 0; i < exponent; ++i) p *= 10;
  return p;
}

absl::StatusOr<Cell> Cell::PrefixWildcard(absl::string_view prefix_digits,
                                          int masked_count,
                                          const AttributeSchema& attr) {
  if (!attr.digit_width.has_value()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "attribute '", attr.name, "' has no digit width for prefix masks"));
  }
  if (prefix_digits.empty()) {
    return absl::InvalidArgumentError("prefix wildcard needs at least one digit");
  }
  if (masked_count < 1) {
    return absl::InvalidArgumentError("prefix wildcard masks no digits");
  }
  if (static_cast<int>(prefix_digits.size()) + masked_count !=
      *attr.digit_width) {
    return absl::InvalidArgumentError(absl::StrCat(
        "prefix wildcard width ", prefix_digits.size() + masked_count,
        " differs from digit width ", *attr.digit_width, " of '", attr.name,
        "'"));
  }
  int64_t prefix = 0;
  for (char c : prefix_digits) {
    if (c < '0' || c > '9') {
      return absl::InvalidArgumentError(
          absl::StrCat("non-digit in prefix '", prefix_digits, "'"));
    }
    prefix = prefix * 10 + (c - '0');
  }
  const int64_t block = static_cast<int64_t>(PowerOfTen(masked_count));
  const int64_t lo = std::max(prefix * block, attr.dmin);
  const int64_t hi = std::min(prefix * block + block - 1, attr.dmax);
  if (lo > hi) {
    return absl::OutOfRangeError(absl::StrCat(
        "prefix '", prefix_digits, "' covers no value of '", attr.name, "'"));
  }
  return Cell(CellKind::kPrefixWildcard, lo, hi,
              static_cast<uint8_t>(masked_count));
}

absl::StatusOr<Cell> Cell::MaskTrailingDigits(int64_t value, int masked_count,
                                              const AttributeSchema& attr) {
  if (!attr.digit_width.has_value()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "attribute '", attr.name, "' has no digit width for prefix masks"));
  }
  if (value < 0) {
    return absl::InvalidArgumentError("cannot digit-mask a negative value");
  }
  const int width = *attr.digit_width;
  std::string digits = std::to_string(value);
  if (static_cast<int>(digits.size()) > width) {
    return absl::OutOfRangeError(absl::StrCat(
        "value ", value, " exceeds digit width ", width, " of '", attr.name,
        "'"));
  }
  digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  if (masked_count >= width) {
    return absl::InvalidArgumentError("prefix wildcard needs at least one digit");
  }
  return PrefixWildcard(absl::string_view(digits).substr(0, width - masked_count),
                        masked_count, attr);
}

std::string Cell::PrefixDigits(const AttributeSchema& attr) const {
  const int width = attr.digit_width.value_or(0);
  const int kept = width - masked_;
  const int64_t prefix = lo_ / static_cast<int64_t>(PowerOfTen(masked_));
  std::string digits = std::to_string(prefix);
  if (static_cast<int>(digits.size()) < kept) {
    digits.insert(0, static_cast<std::size_t>(kept) - digits.size(), '0');
  }
  return digits;
}

bool Covers(const Cell& cell, int64_t v, const AttributeSchema& attr) {
  return attr.InDomain(v) && cell.Covers(v);
}

std::vector<int64_t> Realizations(const Cell& cell,
                                  const AttributeSchema& attr) {
  const int64_t lo = std::max(cell.lo(), attr.dmin);
  const int64_t hi = std::min(cell.hi(), attr.dmax);
  std::vector<int64_t> out;
  if (lo > hi) return out;
  out.reserve(static_cast<std::size_t>(hi - lo) + 1);
  for (int64_t v = lo;; ++v) {
    out.push_back(v);
    if (v == hi) break;
  }
  return out;
}

absl::Status ValidateCell(const Cell& cell, const AttributeSchema& attr) {
  if (cell.lo() > cell.hi()) {
    return absl::InvalidArgumentError(
        absl::StrCat("interval [", cell.lo(), ";", cell.hi(), "] has lo > hi"));
  }
  if (!attr.InDomain(cell.lo()) || !attr.InDomain(cell.hi())) {
    return absl::OutOfRangeError(absl::StrCat(
        "value ", FormatCell(cell, attr), " outside domain [", attr.dmin, ", ",
        attr.dmax, "] of '", attr.name, "'"));
  }
  switch (cell.kind()) {
    case CellKind::kPoint:
      if (cell.lo() != cell.hi()) {
        return absl::InternalError("point with distinct bounds");
      }
      break;
    case CellKind::kInterval:
      if (cell.lo() == cell.hi()) {
        return absl::InternalError("degenerate interval not normalized");
      }
      break;
    case CellKind::kWildcard:
      if (cell.lo() != attr.dmin || cell.hi() != attr.dmax) {
        return absl::InvalidArgumentError(
            absl::StrCat("wildcard does not span the domain of '", attr.name,
                         "'"));
      }
      break;
    case CellKind::kPrefixWildcard:
      if (!attr.digit_width.has_value() || cell.masked_digits() < 1 ||
          cell.masked_digits() >= *attr.digit_width) {
        return absl::InvalidArgumentError(absl::StrCat(
            "prefix wildcard does not fit digit width of '", attr.name, "'"));
      }
      break;
  }
  return absl::OkStatus();
}

void AppendCell(const Cell& cell, const AttributeSchema& attr,
                std::string* out) {
  char buf[24];
  auto append_int = [&](int64_t v) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out->append(buf, end);
  };
  switch (cell.kind()) {
    case CellKind::kPoint:
      append_int(cell.value());
      return;
    case CellKind::kInterval:
      out->push_back('[');
      append_int(cell.lo());
      out->push_back(';');
      append_int(cell.hi());
      out->push_back(']');
      return;
    case CellKind::kWildcard:
      out->push_back('*');
      return;
    case CellKind::kPrefixWildcard:
      out->append(cell.PrefixDigits(attr));
      out->append(static_cast<std::size_t>(cell.masked_digits()), '*');
      return;
  }
}

std::string FormatCell(const Cell& cell, const AttributeSchema& attr) {
  std::string out;
  AppendCell(cell, attr, &out);
  return out;
}

}  // namespace anonkit
