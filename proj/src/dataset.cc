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

#include "anonkit/dataset.h"

#include <unordered_set>

#include "absl/strings/str_cat.h"

namespace anonkit {

void Dataset::AppendRecord(std::span<const Cell> cells,
                           std::size_t original_index) {
  cells_.insert(cells_.end(), cells.begin(), cells.end());
  original_index_.push_back(original_index);
}

absl::Status Dataset::Validate() const {
  if (cells_.size() != original_index_.size() * schema_.size()) {
    return absl::InternalError("cell buffer does not match record count");
  }
  std::unordered_set<std::size_t> seen;
  seen.reserve(num_records());
  for (std::size_t i = 0; i < num_records(); ++i) {
    if (!seen.insert(original_index_[i]).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate original index ", original_index_[i]));
    }
    for (std::size_t a = 0; a < schema_.size(); ++a) {
      absl::Status s = ValidateCell(cell(i, a), schema_.attribute(a));
      if (!s.ok()) {
        return absl::Status(s.code(), absl::StrCat("record ", i, ": ",
                                                   s.message()));
      }
    }
  }
  return absl::OkStatus();
}

absl::Status RequirePoints(const Dataset& d, const AttributeSet& attributes,
                           absl::string_view what) {
  for (std::size_t i = 0; i < d.num_records(); ++i) {
    for (std::size_t a : attributes) {
      if (!d.cell(i, a).is_point()) {
        return absl::FailedPreconditionError(absl::StrCat(
            what, " requires point values; record ", d.original_index(i),
            " has ", FormatCell(d.cell(i, a), d.schema().attribute(a)),
            " in '", d.schema().attribute(a).name, "'"));
      }
    }
  }
  return absl::OkStatus();
}

}  // namespace anonkit
