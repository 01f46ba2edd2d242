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

#ifndef ANONKIT_COARSENING_H_
#define ANONKIT_COARSENING_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "anonkit/dataset.h"
#include "anonkit/schema.h"

namespace anonkit {

// Target resolution per attribute: the number of fixed subintervals its
// declared domain is cut into. Attributes without an entry are left alone.
struct CoarseningSpec {
  std::map<std::size_t, uint64_t> resolution;
};

// The i-th of `resolution` contiguous subintervals of [dmin, dmax] starts at
// dmin + floor(i * W / resolution), W being the domain width; lengths differ
// by at most one. Age [0, 85] at resolution 4 gives [0-20], [21-42],
// [43-63], [64-85].
absl::StatusOr<std::vector<std::pair<int64_t, int64_t>>> CoarseningIntervals(
    const AttributeSchema& attr, uint64_t resolution);

// Resolution for subintervals covering 1/denominator of the domain, capped at
// the domain width (which is the identity).
uint64_t ResolutionForFraction(const AttributeSchema& attr,
                               uint64_t denominator);

// Fixed, attribute-independent coarsening of quasi-identifiers: each point is
// replaced by the subinterval holding it. Input cells of coarsened attributes
// must be points.
absl::StatusOr<Dataset> Coarsen(const Dataset& d, const CoarseningSpec& spec);

}  // namespace anonkit

#endif  // ANONKIT_COARSENING_H_
