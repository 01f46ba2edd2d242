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

#include "anonkit/text_format.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "anonkit/status_macros.h"

namespace anonkit {
namespace {

// Splits on LF, dropping one trailing CR per line. A final empty segment
// (text ending in LF) is not a line.
std::vector<absl::string_view> SplitLines(absl::string_view text) {
  std::vector<absl::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == absl::string_view::npos) end = text.size();
    absl::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

absl::Status LineError(std::size_t line, absl::Status s) {
  return absl::Status(s.code(), absl::StrCat("line ", line, ": ", s.message()));
}

absl::StatusOr<int64_t> ParseInt(absl::string_view token) {
  int64_t v = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || token.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", token, "' is not an integer"));
  }
  return v;
}

absl::StatusOr<Cell> ParseToken(absl::string_view token,
                                const AttributeSchema& attr) {
  if (token.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("empty value for '", attr.name, "'"));
  }
  if (token == "*") return Cell::Wildcard(attr);
  if (token.front() == '[' || token.back() == ']') {
    if (token.size() < 5 || token.front() != '[' || token.back() != ']') {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed interval '", token, "'"));
    }
    absl::string_view body = token.substr(1, token.size() - 2);
    std::size_t semi = body.find(';');
    if (semi == absl::string_view::npos ||
        body.find(';', semi + 1) != absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed interval '", token, "'"));
    }
    ASSIGN_OR_RETURN(int64_t lo, ParseInt(body.substr(0, semi)));
    ASSIGN_OR_RETURN(int64_t hi, ParseInt(body.substr(semi + 1)));
    if (lo > hi) {
      return absl::InvalidArgumentError(
          absl::StrCat("interval '", token, "' has lo > hi"));
    }
    Cell c = Cell::Interval(lo, hi);
    RETURN_IF_ERROR(ValidateCell(c, attr));
    return c;
  }
  if (token.back() == '*') {
    std::size_t star = token.find('*');
    absl::string_view digits = token.substr(0, star);
    absl::string_view stars = token.substr(star);
    if (stars.find_first_not_of('*') != absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("malformed prefix wildcard '", token, "'"));
    }
    return Cell::PrefixWildcard(digits, static_cast<int>(stars.size()), attr);
  }
  ASSIGN_OR_RETURN(int64_t v, ParseInt(token));
  Cell c = Cell::Point(v);
  RETURN_IF_ERROR(ValidateCell(c, attr));
  return c;
}

}  // namespace

absl::StatusOr<Dataset> ParseDataset(absl::string_view text,
                                     const Schema& schema) {
  std::vector<absl::string_view> lines = SplitLines(text);
  if (lines.empty()) {
    return absl::InvalidArgumentError("line 1: missing header");
  }
  {
    std::size_t field = 0;
    std::size_t start = 0;
    absl::string_view header = lines[0];
    while (true) {
      std::size_t end = header.find(',', start);
      absl::string_view name = header.substr(
          start, end == absl::string_view::npos ? absl::string_view::npos
                                               : end - start);
      if (field >= schema.size()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "line 1: header has more than ", schema.size(), " fields"));
      }
      if (name != schema.attribute(field).name) {
        return absl::InvalidArgumentError(absl::StrCat(
            "line 1: header field ", field + 1, " is '", name,
            "', schema expects '", schema.attribute(field).name, "'"));
      }
      ++field;
      if (end == absl::string_view::npos) break;
      start = end + 1;
    }
    if (field != schema.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line 1: header has ", field, " fields, schema has ", schema.size()));
    }
  }

  Dataset d(schema);
  d.Reserve(lines.size() - 1);
  std::vector<Cell> row(schema.size());
  for (std::size_t li = 1; li < lines.size(); ++li) {
    absl::string_view line = lines[li];
    std::size_t field = 0;
    std::size_t start = 0;
    while (true) {
      std::size_t end = line.find(',', start);
      if (field >= schema.size()) {
        return LineError(li + 1, absl::InvalidArgumentError(absl::StrCat(
                                     "more than ", schema.size(), " fields")));
      }
      absl::string_view token = line.substr(
          start,
          end == absl::string_view::npos ? absl::string_view::npos : end - start);
      absl::StatusOr<Cell> c = ParseToken(token, schema.attribute(field));
      if (!c.ok()) return LineError(li + 1, c.status());
      row[field] = *c;
      ++field;
      if (end == absl::string_view::npos) break;
      start = end + 1;
    }
    if (field != schema.size()) {
      return LineError(li + 1, absl::InvalidArgumentError(absl::StrCat(
                                   field, " fields, expected ", schema.size())));
    }
    d.AppendRecord(row, li - 1);
  }
  return d;
}

std::string SerializeDataset(const Dataset& d) {
  const Schema& schema = d.schema();
  std::string out;
  out.reserve(32 + d.num_records() * d.num_attributes() * 7);
  for (std::size_t a = 0; a < schema.size(); ++a) {
    if (a > 0) out.push_back(',');
    out.append(schema.attribute(a).name);
  }
  out.push_back('\n');
  for (std::size_t i = 0; i < d.num_records(); ++i) {
    for (std::size_t a = 0; a < schema.size(); ++a) {
      if (a > 0) out.push_back(',');
      AppendCell(d.cell(i, a), schema.attribute(a), &out);
    }
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    return absl::DataLossError(absl::StrCat("error reading '", path, "'"));
  }
  return std::move(ss).str();
}

absl::Status WriteFileAtomically(const std::string& path,
                                 absl::string_view contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      return absl::PermissionDeniedError(
          absl::StrCat("cannot write '", tmp, "'"));
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      out.close();
      std::remove(tmp.c_str());
      return absl::DataLossError(absl::StrCat("error writing '", tmp, "'"));
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    return absl::PermissionDeniedError(
        absl::StrCat("cannot rename '", tmp, "' to '", path, "'"));
  }
  return absl::OkStatus();
}

absl::StatusOr<InferredSchema> InferSchema(absl::string_view text) {
  std::vector<absl::string_view> lines = SplitLines(text);
  if (lines.empty()) {
    return absl::InvalidArgumentError("line 1: missing header");
  }
  std::vector<std::string> names;
  {
    absl::string_view header = lines[0];
    std::size_t start = 0;
    while (true) {
      std::size_t end = header.find(',', start);
      names.emplace_back(header.substr(
          start,
          end == absl::string_view::npos ? absl::string_view::npos : end - start));
      if (end == absl::string_view::npos) break;
      start = end + 1;
    }
  }
  const std::size_t m = names.size();
  std::vector<int64_t> lo(m, std::numeric_limits<int64_t>::max());
  std::vector<int64_t> hi(m, std::numeric_limits<int64_t>::min());

  // First pass with an unbounded schema learns the extremes.
  std::vector<AttributeSchema> loose(m);
  for (std::size_t a = 0; a < m; ++a) {
    loose[a].name = names[a];
    loose[a].dmin = std::numeric_limits<int64_t>::min();
    loose[a].dmax = std::numeric_limits<int64_t>::max();
  }
  for (std::size_t li = 1; li < lines.size(); ++li) {
    absl::string_view line = lines[li];
    std::size_t field = 0;
    std::size_t start = 0;
    while (true) {
      std::size_t end = line.find(',', start);
      if (field >= m) {
        return LineError(li + 1, absl::InvalidArgumentError(absl::StrCat(
                                     "more than ", m, " fields")));
      }
      absl::string_view token = line.substr(
          start,
          end == absl::string_view::npos ? absl::string_view::npos : end - start);
      if (token.find('*') != absl::string_view::npos) {
        return LineError(li + 1,
                         absl::InvalidArgumentError(
                             "cannot infer a domain from wildcard values"));
      }
      absl::StatusOr<Cell> c = ParseToken(token, loose[field]);
      if (!c.ok()) return LineError(li + 1, c.status());
      lo[field] = std::min(lo[field], c->lo());
      hi[field] = std::max(hi[field], c->hi());
      ++field;
      if (end == absl::string_view::npos) break;
      start = end + 1;
    }
    if (field != m) {
      return LineError(li + 1, absl::InvalidArgumentError(
                                   absl::StrCat(field, " fields, expected ", m)));
    }
  }
  std::vector<AttributeSchema> attrs(m);
  for (std::size_t a = 0; a < m; ++a) {
    attrs[a].name = names[a];
    attrs[a].role = a + 1 == m && m > 1 ? Role::kConfidential
                                        : Role::kQuasiIdentifier;
    attrs[a].dmin = lines.size() > 1 ? lo[a] : 0;
    attrs[a].dmax = lines.size() > 1 ? hi[a] : 0;
  }
  ASSIGN_OR_RETURN(Schema schema, Schema::Create(std::move(attrs)));
  return InferredSchema{std::move(schema), true};
}

}  // namespace anonkit
