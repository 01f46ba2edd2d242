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

#include "anonkit/correlation.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "anonkit/status_macros.h"

namespace anonkit {

std::optional<double> Pearson(const std::vector<double>& x,
                              const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) return std::nullopt;
  long double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const long double mx = sx / n;
  const long double my = sy / n;
  long double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long double dx = x[i] - mx;
    const long double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  const double r = static_cast<double>(sxy / std::sqrt(sxx * syy));
  return std::clamp(r, -1.0, 1.0);
}

absl::StatusOr<CorrelationMatrix> PairwiseCorrelations(
    const Dataset& d, const AttributeSet& attributes) {
  RETURN_IF_ERROR(ValidateAttributeSet(d.schema(), attributes));
  const std::size_t m = attributes.size();
  CorrelationMatrix out;
  out.names = d.schema().Names(attributes);
  std::vector<std::vector<double>> columns(m);
  for (std::size_t i = 0; i < d.num_records(); ++i) {
    bool all_points = true;
    for (std::size_t a : attributes) all_points &= d.cell(i, a).is_point();
    if (!all_points) {
      ++out.excluded_records;
      continue;
    }
    for (std::size_t k = 0; k < m; ++k) {
      columns[k].push_back(static_cast<double>(d.cell(i, attributes[k]).value()));
    }
  }
  out.used_records = d.num_records() - out.excluded_records;
  if (out.used_records < 2) {
    return absl::FailedPreconditionError(absl::StrCat(
        "correlations need at least 2 point-valued records, have ",
        out.used_records));
  }
  out.values.assign(m * m, std::nullopt);
  for (std::size_t i = 0; i < m; ++i) {
    const std::optional<double> self = Pearson(columns[i], columns[i]);
    out.values[i * m + i] = self.has_value() ? std::optional<double>(1.0)
                                             : std::nullopt;
    for (std::size_t j = i + 1; j < m; ++j) {
      std::optional<double> r = Pearson(columns[i], columns[j]);
      out.values[i * m + j] = r;
      out.values[j * m + i] = r;
    }
  }
  return out;
}

absl::StatusOr<double> CorrelationSimilarity(const CorrelationMatrix& m1,
                                             const CorrelationMatrix& m2) {
  if (m1.names != m2.names) {
    return absl::InvalidArgumentError(
        "correlation matrices cover different attributes");
  }
  std::vector<double> x, y;
  for (std::size_t i = 0; i < m1.size(); ++i) {
    for (std::size_t j = i + 1; j < m1.size(); ++j) {
      if (!m1.at(i, j).has_value() || !m2.at(i, j).has_value()) {
        return absl::FailedPreconditionError(absl::StrCat(
            "undefined correlation for (", m1.names[i], ", ", m1.names[j], ")"));
      }
      x.push_back(*m1.at(i, j));
      y.push_back(*m2.at(i, j));
    }
  }
  std::optional<double> r = Pearson(x, y);
  if (!r.has_value()) {
    return absl::FailedPreconditionError(
        "correlation similarity undefined for constant or too few entries");
  }
  return *r;
}

std::string CorrelationCsv(const CorrelationMatrix& m) {
  std::string out = "attribute";
  for (const std::string& n : m.names) absl::StrAppend(&out, ",", n);
  out.push_back('\n');
  for (std::size_t i = 0; i < m.size(); ++i) {
    out.append(m.names[i]);
    for (std::size_t j = 0; j < m.size(); ++j) {
      out.push_back(',');
      if (m.at(i, j).has_value()) absl::StrAppend(&out, *m.at(i, j));
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace anonkit
