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

#ifndef ANONKIT_DATASET_H_
#define ANONKIT_DATASET_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "anonkit/cell.h"
#include "anonkit/schema.h"

namespace anonkit {

// Read-only view of one record.
struct RecordView {
  std::span<const Cell> cells;
  std::size_t original_index = 0;

  const Cell& operator[](std::size_t attribute) const {
    return cells[attribute];
  }
};

// Ordered records over a fixed schema. Cells are stored row-major in one
// contiguous buffer; record order is significant and every transformation in
// this library preserves it.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(Schema schema) : schema_(std::move(schema)) {}

  const Schema& schema() const { return schema_; }
  std::size_t num_records() const { return original_index_.size(); }
  std::size_t num_attributes() const { return schema_.size(); }
  bool empty() const { return original_index_.empty(); }

  RecordView record(std::size_t i) const {
    return {std::span<const Cell>(cells_).subspan(i * schema_.size(),
                                                  schema_.size()),
            original_index_[i]};
  }
  const Cell& cell(std::size_t record, std::size_t attribute) const {
    return cells_[record * schema_.size() + attribute];
  }
  std::size_t original_index(std::size_t record) const {
    return original_index_[record];
  }

  // The cells of `record` must match the schema width; no domain checks.
  void AppendRecord(std::span<const Cell> cells, std::size_t original_index);
  void AppendRecord(std::span<const Cell> cells) {
    AppendRecord(cells, num_records());
  }
  void Reserve(std::size_t records) {
    cells_.reserve(records * schema_.size());
    original_index_.reserve(records);
  }

  // Only for transformations that build a modified copy.
  Cell& mutable_cell(std::size_t record, std::size_t attribute) {
    return cells_[record * schema_.size() + attribute];
  }

  // Checks domains, prefix widths and original_index uniqueness.
  absl::Status Validate() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  Schema schema_;
  std::vector<Cell> cells_;
  std::vector<std::size_t> original_index_;
};

// Fails with the offending record if any cell of `attributes` is not a point.
absl::Status RequirePoints(const Dataset& d, const AttributeSet& attributes,
                           absl::string_view what);

}  // namespace anonkit

#endif  // ANONKIT_DATASET_H_
