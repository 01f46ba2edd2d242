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

#ifndef ANONKIT_CORRELATION_H_
#define ANONKIT_CORRELATION_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "anonkit/dataset.h"
#include "anonkit/schema.h"

namespace anonkit {

// Symmetric Pearson correlation matrix. An entry is empty when either
// attribute has zero variance over the records used.
struct CorrelationMatrix {
  std::vector<std::string> names;
  std::vector<std::optional<double>> values;  // Row-major, size^2.
  // Records skipped because a selected attribute was not a point.
  std::size_t excluded_records = 0;
  std::size_t used_records = 0;

  std::size_t size() const { return names.size(); }
  const std::optional<double>& at(std::size_t i, std::size_t j) const {
    return values[i * names.size() + j];
  }
};

absl::StatusOr<CorrelationMatrix> PairwiseCorrelations(
    const Dataset& d, const AttributeSet& attributes);

// Pearson correlation between the strict upper triangles of two matrices
// over the same attributes. Undefined entries or constant triangles fail.
absl::StatusOr<double> CorrelationSimilarity(const CorrelationMatrix& m1,
                                             const CorrelationMatrix& m2);

// Pearson correlation of two equal-length samples; empty on zero variance.
std::optional<double> Pearson(const std::vector<double>& x,
                              const std::vector<double>& y);

// One CSV row per matrix row, led by the attribute name; undefined entries
// are left blank.
std::string CorrelationCsv(const CorrelationMatrix& m);

}  // namespace anonkit

#endif  // ANONKIT_CORRELATION_H_
