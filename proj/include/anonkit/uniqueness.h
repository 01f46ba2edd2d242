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

#ifndef ANONKIT_UNIQUENESS_H_
#define ANONKIT_UNIQUENESS_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "anonkit/dataset.h"
#include "anonkit/equivalence.h"
#include "anonkit/schema.h"

namespace anonkit {

struct UniquenessOptions {
  // Upper bound on the number of realization regions the search visits for
  // one record. Exceeding it yields a ResourceExhausted error instead of an
  // approximate answer.
  uint64_t realization_cap = 1'000'000;
};

// True iff every cell of `candidate` over `q` covers the matching entry of
// `realization` (one value per attribute of `q`, in order).
bool Fits(const RecordView& candidate, std::span<const int64_t> realization,
          const AttributeSet& q);

// Worst-case uniqueness of record position `record`: true iff some joint
// realization of its cells over `q` is fitted by no other record.
//
// Realizations are not enumerated one by one. The record's box is cut along
// the boundaries of the other records' boxes that intersect it, and each
// resulting region is either entirely fitted by some record or not at all.
// The regions are walked depth-first, one attribute per level, and
// `realization_cap` limits how many are visited. A point record needs
// no enumeration at all.
absl::StatusOr<bool> IsUniqueWorstCase(const Dataset& d, std::size_t record,
                                       const AttributeSet& q,
                                       const UniquenessOptions& options = {});

// Whole-dataset evaluator. Records sharing their exact cell tuple with
// another record are never unique; the rest are resolved through per-attribute
// interval indexes, so evaluating every record stays far from quadratic.
class WorstCaseUniqueness {
 public:
  WorstCaseUniqueness(const Dataset& d, AttributeSet q,
                      UniquenessOptions options = {});

  absl::StatusOr<bool> IsUnique(std::size_t record) const;
  // Positions of all worst-case-unique records, ascending. The first record
  // that exceeds the cap aborts the evaluation.
  absl::StatusOr<std::vector<std::size_t>> UniqueRecords() const;

  const ClassPartition& partition() const { return partition_; }
  const AttributeSet& attributes() const { return q_; }

 private:
  class IntervalIndex;

  const Dataset* d_;
  AttributeSet q_;
  UniquenessOptions options_;
  ClassPartition partition_;
  std::vector<bool> generalized_;
  std::shared_ptr<const IntervalIndex> all_index_;
  std::shared_ptr<const IntervalIndex> generalized_index_;
};

}  // namespace anonkit

#endif  // ANONKIT_UNIQUENESS_H_
