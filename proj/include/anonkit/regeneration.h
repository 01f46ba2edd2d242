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

#ifndef ANONKIT_REGENERATION_H_
#define ANONKIT_REGENERATION_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "anonkit/dataset.h"
#include "anonkit/schema.h"

namespace anonkit {

// Per attribute index, the distribution of original values behind masked
// cells as (value, weight) pairs.
using MaskedValueDistributions =
    std::map<std::size_t, std::vector<std::pair<int64_t, double>>>;

// Reads "attribute,value,weight" CSV (with that header).
absl::StatusOr<MaskedValueDistributions> ParseDistributionsCsv(
    absl::string_view text, const Schema& schema);
std::string DistributionsToCsv(const MaskedValueDistributions& dists,
                               const Schema& schema);

// Replaces every non-point cell by a point drawn from its attribute's
// distribution restricted to the values the cell covers. Point cells are kept
// bit-exactly; draws are a pure function of `seed`. Cells whose restricted
// distribution has no mass are all reported in one error.
absl::StatusOr<Dataset> RegenerateMasked(
    const Dataset& d, const MaskedValueDistributions& distributions,
    uint64_t seed);

}  // namespace anonkit

#endif  // ANONKIT_REGENERATION_H_
