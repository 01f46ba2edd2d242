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

#ifndef ANONKIT_EQUIVALENCE_H_
#define ANONKIT_EQUIVALENCE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "anonkit/cell.h"
#include "anonkit/dataset.h"
#include "anonkit/schema.h"

namespace anonkit {

// Maximal group of records whose cells over the chosen attributes are
// identical. Two Interval(24,28) cells are equal; Interval(24,28) and
// Point(26) are not.
struct EquivalenceClass {
  std::vector<Cell> qi_tuple;
  std::vector<std::size_t> member_indices;  // Ascending record positions.
};

// Compact partition of a dataset into equivalence classes. Classes are
// numbered in order of their first member.
struct ClassPartition {
  std::vector<uint32_t> class_of;      // Per record position.
  std::vector<uint32_t> class_sizes;   // Per class.
  std::vector<uint32_t> first_member;  // Per class.

  std::size_t num_classes() const { return class_sizes.size(); }
  std::size_t min_class_size() const;
  double mean_class_size() const;
  // Class size -> number of classes of that size.
  std::map<std::size_t, std::size_t> SizeHistogram() const;
};

ClassPartition PartitionByCells(const Dataset& d, const AttributeSet& q);

std::vector<EquivalenceClass> ExtractEquivalenceClasses(const Dataset& d,
                                                        const AttributeSet& q);

}  // namespace anonkit

#endif  // ANONKIT_EQUIVALENCE_H_
