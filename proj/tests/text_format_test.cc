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

#include <random>

#include "anonkit/generator.h"
#include "anonkit/schema.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace anonkit {
namespace {

Schema SpdSchema() {
  std::vector<AttributeSchema> attrs = PdSchema().attributes();
  attrs.pop_back();  // no diagnosis column
  return *Schema::Create(attrs);
}

TEST(TextFormatTest, ParsesPlainRecord) {
  absl::StatusOr<std::string> text = ReadFile(testing::DataPath("spd_record.txt"));
  ASSERT_TRUE(text.ok());
  absl::StatusOr<Dataset> d = ParseDataset(*text, SpdSchema());
  ASSERT_TRUE(d.ok()) << d.status();
  ASSERT_EQ(d->num_records(), 1u);
  const std::vector<int64_t> expected = {380929, 25, 1,  2, 1,
                                         94928,  49, 18, 4, 220449};
  for (std::size_t a = 0; a < expected.size(); ++a) {
    EXPECT_TRUE(d->cell(0, a).is_point());
    EXPECT_EQ(d->cell(0, a).value(), expected[a]);
  }
  EXPECT_EQ(SerializeDataset(*d), *text);
}

TEST(TextFormatTest, ParsesGeneralizedTokens) {
  Dataset d = testing::LoadFixture("masked_mixed.txt", PdSchema());
  ASSERT_EQ(d.num_records(), 3u);
  EXPECT_EQ(d.cell(0, 1), Cell::Interval(24, 28));
  EXPECT_EQ(d.cell(0, 3).kind(), CellKind::kWildcard);
  EXPECT_EQ(d.cell(0, 5).kind(), CellKind::kPrefixWildcard);
  EXPECT_EQ(d.cell(0, 5).lo(), 93700);
  EXPECT_EQ(d.cell(0, 5).hi(), 93799);
  EXPECT_EQ(d.cell(2, 5).lo(), 0);
  EXPECT_EQ(d.cell(2, 5).hi(), 999);
  for (std::size_t i = 0; i < d.num_records(); ++i) {
    EXPECT_EQ(d.original_index(i), i);
  }
}

TEST(TextFormatTest, RoundTripsFixtures) {
  for (const char* name : {"six_records.txt", "six_records_3anon.txt", "masked_mixed.txt"}) {
    absl::StatusOr<std::string> text = ReadFile(testing::DataPath(name));
    ASSERT_TRUE(text.ok());
    absl::StatusOr<Dataset> d = ParseDataset(*text, PdSchema());
    ASSERT_TRUE(d.ok()) << name << ": " << d.status();
    EXPECT_EQ(SerializeDataset(*d), *text) << name;
    absl::StatusOr<Dataset> again = ParseDataset(SerializeDataset(*d), PdSchema());
    ASSERT_TRUE(again.ok());
    EXPECT_EQ(*again, *d) << name;
  }
}

TEST(TextFormatTest, RoundTripsRandomDatasets) {
  std::mt19937_64 rng(11);
  const Schema schema = PdSchema();
  for (int trial = 0; trial < 50; ++trial) {
    Dataset d(schema);
    std::vector<Cell> row(schema.size());
    for (int i = 0; i < 40; ++i) {
      for (std::size_t a = 0; a < schema.size(); ++a) {
        const AttributeSchema& attr = schema.attribute(a);
        std::uniform_int_distribution<int64_t> u(attr.dmin, attr.dmax);
        int64_t x = u(rng), y = u(rng);
        switch (rng() % 4) {
          case 0:
            row[a] = Cell::Point(x);
            break;
          case 1:
            row[a] = Cell::Interval(std::min(x, y), std::max(x, y));
            break;
          case 2:
            row[a] = Cell::Wildcard(attr);
            break;
          default:
            if (attr.digit_width && *attr.digit_width > 1) {
              row[a] = *Cell::MaskTrailingDigits(
                  x, 1 + static_cast<int>(rng() % (*attr.digit_width - 1)), attr);
            } else {
              row[a] = Cell::Point(x);
            }
        }
      }
      d.AppendRecord(row);
    }
    absl::StatusOr<Dataset> back = ParseDataset(SerializeDataset(d), schema);
    ASSERT_TRUE(back.ok()) << back.status();
    ASSERT_EQ(*back, d);
  }
}

TEST(TextFormatTest, ReportsErrorsWithLineNumbers) {
  const Schema schema = PdSchema();
  const std::string header =
      "oshpd_id,age_yrs,sex,ethncty,race,patzip,patcnty,los,adm_qtr,charge,"
      "diag_p\n";
  const std::string good = "190125,42,1,2,1,93722,10,33,1,505785,486\n";
  struct Case {
    std::string line;
    std::string needle;
  };
  const std::vector<Case> cases = {
      {"190125,[42;30],1,2,1,93722,10,33,1,505785,486", "line 3"},
      {"190125,[42,1,2,1,93722,10,33,1,505785,486", "line 3"},
      {"190125,42;50],1,2,1,93722,10,33,1,505785,486", "line 3"},
      {"190125,4x,1,2,1,93722,10,33,1,505785,486", "line 3"},
      {"190125,42,1,2,1,93722,10,33,1,505785", "line 3"},
      {"190125,42,1,2,1,93722,10,33,1,505785,486,7", "line 3"},
      {"190125,86,1,2,1,93722,10,33,1,505785,486", "line 3"},
      {"190125,42,1,2,1,93**,10,33,1,505785,486", "line 3"},
      {"190125,4*,1,2,1,93722,10,33,1,505785,486", "line 3"},
  };
  for (const Case& c : cases) {
    absl::StatusOr<Dataset> d = ParseDataset(header + good + c.line + "\n", schema);
    ASSERT_FALSE(d.ok()) << c.line;
    EXPECT_NE(d.status().message().find(c.needle), std::string::npos)
        << d.status();
  }
  EXPECT_FALSE(ParseDataset("wrong,header\n", schema).ok());
  EXPECT_FALSE(ParseDataset("", schema).ok());
}

TEST(TextFormatTest, AcceptsCrlfAndMissingFinalNewline) {
  const Schema schema = *Schema::Create(
      {{"a", Role::kQuasiIdentifier, FeatureGroup::kCensus, 0, 9, std::nullopt},
       {"b", Role::kConfidential, FeatureGroup::kNone, 0, 9, std::nullopt}});
  absl::StatusOr<Dataset> d = ParseDataset("a,b\r\n1,2\r\n3,4", schema);
  ASSERT_TRUE(d.ok()) << d.status();
  EXPECT_EQ(d->num_records(), 2u);
  EXPECT_EQ(SerializeDataset(*d), "a,b\n1,2\n3,4\n");
  absl::StatusOr<Dataset> empty = ParseDataset("a,b\n", schema);
  ASSERT_TRUE(empty.ok());
  EXPECT_EQ(empty->num_records(), 0u);
}

TEST(TextFormatTest, InfersSchemaFromData) {
  absl::StatusOr<InferredSchema> s =
      InferSchema("x,y,z\n1,5,100\n3,[2;9],200\n");
  ASSERT_TRUE(s.ok()) << s.status();
  EXPECT_TRUE(s->domains_inferred_from_data);
  ASSERT_EQ(s->schema.size(), 3u);
  EXPECT_TRUE(s->schema.attribute(0).is_quasi_identifier());
  EXPECT_FALSE(s->schema.attribute(2).is_quasi_identifier());
  EXPECT_EQ(s->schema.attribute(1).dmin, 2);
  EXPECT_EQ(s->schema.attribute(1).dmax, 9);
  EXPECT_FALSE(InferSchema("x,y\n*,1\n").ok());
}

TEST(TextFormatTest, AtomicWriteLeavesNoTempOnSuccess) {
  const std::string path = ::testing::TempDir() + "/anonkit_atomic.txt";
  ASSERT_TRUE(WriteFileAtomically(path, "abc\n").ok());
  absl::StatusOr<std::string> back = ReadFile(path);
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back, "abc\n");
  EXPECT_FALSE(ReadFile(path + ".tmp").ok());
  EXPECT_FALSE(WriteFileAtomically("/nonexistent/dir/file.txt", "x").ok());
  std::remove(path.c_str());
}

}  // namespace
}  // namespace anonkit
