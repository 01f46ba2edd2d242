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

#ifndef ANONKIT_DISTANCE_H_
#define ANONKIT_DISTANCE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "anonkit/dataset.h"
#include "anonkit/schema.h"

namespace anonkit {

// Population standard deviation per schema attribute, over the point cells
// of the original dataset. Attributes without points get 0.
struct AttributeStats {
  std::vector<double> sigma;
};

AttributeStats ComputeAttributeStats(const Dataset& original);

// Standardized Euclidean distance over `q`; attributes with sigma 0
// contribute nothing. Both records must be point-valued on `q`.
absl::StatusOr<double> RecordDistance(const RecordView& rx,
                                      const RecordView& ry,
                                      const AttributeSet& q,
                                      const AttributeStats& stats);

// Squared standardized distance of a point record to the all-zeros record,
// the sort key of the clustering anonymizers. Unchecked.
double SquaredDistanceToOrigin(const RecordView& r, const AttributeSet& q,
                               const AttributeStats& stats);

// Worst-case point for a masked value: the bound of the masked range farther
// from `original`, with exact ties going to the lower bound. Wildcards use
// the attribute domain, prefix masks their digit block.
absl::StatusOr<int64_t> WorstCasePoint(int64_t original, const Cell& masked,
                                       const AttributeSchema& attr);

// (1 / (n * |q|)) * sum_i distance(r_i, r'_i), with each masked cell first
// replaced by its worst-case point. Released points are used as they are, so
// regenerated values need not match the original. Records are paired by
// position; the sum is a fixed-order pairwise reduction so the result is
// reproducible.
absl::StatusOr<double> InformationLoss(const Dataset& original,
                                       const Dataset& masked,
                                       const AttributeSet& q,
                                       const AttributeStats& stats);

// Pairwise (cascade) summation in index order.
double PairwiseSum(std::span<const double> values);

}  // namespace anonkit

#endif  // ANONKIT_DISTANCE_H_
