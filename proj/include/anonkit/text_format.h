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

#ifndef ANONKIT_TEXT_FORMAT_H_
#define ANONKIT_TEXT_FORMAT_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "anonkit/dataset.h"
#include "anonkit/schema.h"

namespace anonkit {

// Plain-text microdata format:
//
//   oshpd_id,age_yrs,sex,...,charge
//   380929,[24;28],1,*,1,937**,49,18,4,220449
//
// The first line is the comma-separated header, then one record per line
// with one value per attribute. A value is an integer, an interval "[lo;hi]",
// the wildcard "*", or a digit prefix followed by '*' once per masked digit.
// Lines end with LF (a trailing CR is tolerated on input).
//
// Header names must equal the schema names, in order. Errors carry the
// 1-based line number.
absl::StatusOr<Dataset> ParseDataset(absl::string_view text,
                                     const Schema& schema);

// Inverse of ParseDataset. Records are written in stored order, each line
// LF-terminated.
std::string SerializeDataset(const Dataset& d);

absl::StatusOr<std::string> ReadFile(const std::string& path);
// Writes through a temporary sibling and renames, so a failed write never
// leaves a partial file behind.
absl::Status WriteFileAtomically(const std::string& path,
                                 absl::string_view contents);

struct InferredSchema {
  Schema schema;
  // True whenever domains came from the data; data extremes need not be the
  // true domain limits.
  bool domains_inferred_from_data = false;
};

// Builds a schema from a data file alone: header names, every attribute a
// quasi-identifier except the last (confidential), domains from observed
// point and interval values. Wildcards are rejected since they carry no
// range of their own.
absl::StatusOr<InferredSchema> InferSchema(absl::string_view text);

}  // namespace anonkit

#endif  // ANONKIT_TEXT_FORMAT_H_
