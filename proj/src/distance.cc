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

#include "anonkit/distance.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "anonkit/status_macros.h"

namespace anonkit {

AttributeStats ComputeAttributeStats(const Dataset& original) {
  const std::size_t m = original.num_attributes();
  AttributeStats stats;
  stats.sigma.assign(m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    long double sum = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < original.num_records(); ++i) {
      const Cell& c = original.cell(i, a);
      if (!c.is_point()) continue;
      sum += c.value();
      ++count;
    }
    if (count == 0) continue;
    const long double mean = sum / count;
    long double ss = 0;
    for (std::size_t i = 0; i < original.num_records(); ++i) {
      const Cell& c = original.cell(i, a);
      if (!c.is_point()) continue;
      const long double dv = c.value() - mean;
      ss += dv * dv;
    }
    stats.sigma[a] = static_cast<double>(std::sqrt(ss / count));
  }
  return stats;
}

namespace {

double StandardizedTerm(int64_t x, int64_t y, double sigma) {
  if (sigma == 0.0) return 0.0;
  const double t = static_cast<double>(x - y) / sigma;
  return t * t;
}

}  // namespace

absl::StatusOr<double> RecordDistance(const RecordView& rx,
                                      const RecordView& ry,
                                      const AttributeSet& q,
                                      const AttributeStats& stats) {
  double sum = 0.0;
  for (std::size_t a : q) {
    if (!rx[a].is_point() || !ry[a].is_point()) {
      return absl::FailedPreconditionError(
          "record distance is defined on point values only");
    }
    if (a >= stats.sigma.size()) {
      return absl::InvalidArgumentError("statistics do not cover attribute");
    }
    sum += StandardizedTerm(rx[a].value(), ry[a].value(), stats.sigma[a]);
  }
  return std::sqrt(sum);
}

double SquaredDistanceToOrigin(const RecordView& r, const AttributeSet& q,
                               const AttributeStats& stats) {
  double sum = 0.0;
  for (std::size_t a : q) sum += StandardizedTerm(r[a].value(), 0, stats.sigma[a]);
  return sum;
}

absl::StatusOr<int64_t> WorstCasePoint(int64_t original, const Cell& masked,
                                       const AttributeSchema& attr) {
  if (!Covers(masked, original, attr)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "masked value ", FormatCell(masked, attr), " of '", attr.name,
        "' does not cover original ", original));
  }
  const int64_t lo = masked.lo();
  const int64_t hi = masked.hi();
  return (hi - original) > (original - lo) ? hi : lo;
}

double PairwiseSum(std::span<const double> values) {
  constexpr std::size_t kBlock = 8;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return PairwiseSum(values.first(half)) + PairwiseSum(values.subspan(half));
}

absl::StatusOr<double> InformationLoss(const Dataset& original,
                                       const Dataset& masked,
                                       const AttributeSet& q,
                                       const AttributeStats& stats) {
  RETURN_IF_ERROR(ValidateAttributeSet(original.schema(), q));
  if (original.num_records() != masked.num_records()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "record count mismatch: original ", original.num_records(),
        ", masked ", masked.num_records()));
  }
  if (original.num_attributes() != masked.num_attributes()) {
    return absl::InvalidArgumentError("schemas differ in attribute count");
  }
  if (stats.sigma.size() < original.num_attributes()) {
    return absl::InvalidArgumentError("statistics do not cover the schema");
  }
  RETURN_IF_ERROR(RequirePoints(original, q, "information loss"));
  const std::size_t n = original.num_records();
  if (n == 0) return 0.0;

  std::vector<double> per_record(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t a : q) {
      const int64_t x = original.cell(i, a).value();
      const Cell& m = masked.cell(i, a);
      // A released point (kept or regenerated) is its own only realization.
      if (m.is_point()) {
        sum += StandardizedTerm(x, m.value(), stats.sigma[a]);
        continue;
      }
      absl::StatusOr<int64_t> y =
          WorstCasePoint(x, m, original.schema().attribute(a));
      if (!y.ok()) {
        return absl::Status(y.status().code(),
                            absl::StrCat("record ", original.original_index(i),
                                         ": ", y.status().message()));
      }
      sum += StandardizedTerm(x, *y, stats.sigma[a]);
    }
    per_record[i] = std::sqrt(sum);
  }
  return PairwiseSum(per_record) /
         (static_cast<double>(n) * static_cast<double>(q.size()));
}

}  // namespace anonkit
