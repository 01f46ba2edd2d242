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

#ifndef ANONKIT_SAFE_HARBOR_H_
#define ANONKIT_SAFE_HARBOR_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "anonkit/dataset.h"
#include "anonkit/schema.h"
#include "anonkit/uniqueness.h"

namespace anonkit {

enum class MaskAction {
  // Replace the value by the hull of the configured buckets it touches.
  kCoarsen,
  // Replace the value by "*". With `only_values`, only points in that set are
  // suppressed (e.g. small county groups).
  kSuppress,
  // Mask the last `digits` digits, e.g. a 5-digit ZIP to "937**".
  kTruncateDigits,
};

struct MaskingStep {
  std::size_t attribute = 0;
  MaskAction action = MaskAction::kSuppress;
  // kCoarsen: contiguous inclusive buckets partitioning the domain.
  std::vector<std::pair<int64_t, int64_t>> buckets;
  // kTruncateDigits.
  int digits = 0;
  // kSuppress filter, sorted; empty means every value.
  std::vector<int64_t> only_values;
  std::string label;
};

// Steps are applied to a unique record strictly in this order.
struct MaskingOrder {
  std::vector<MaskingStep> steps;
};

absl::Status ValidateMaskingOrder(const Schema& schema,
                                  const MaskingOrder& order);

// Result of one step on one cell; may equal the input (no-op).
absl::StatusOr<Cell> ApplyMaskingStep(const Cell& cell, const MaskingStep& step,
                                      const AttributeSchema& attr);

struct SafeHarborResult {
  Dataset dataset;
  // Records still worst-case unique once their steps ran out.
  std::vector<std::size_t> residual_records;
  // Per record position, how many steps of the order were consumed.
  std::vector<uint32_t> steps_consumed;
  std::size_t passes = 0;
};

// Sequential masking to a fixpoint. Each pass recomputes worst-case
// uniqueness over `q` on the partially masked data and gives every unique
// record its next effective step. Records that were never unique keep their
// values; masking only widens cells, so a non-unique record stays so.
absl::StatusOr<SafeHarborResult> SafeHarborMask(
    const Dataset& d, const MaskingOrder& order, const AttributeSet& q,
    const UniquenessOptions& options = {});

}  // namespace anonkit

#endif  // ANONKIT_SAFE_HARBOR_H_
