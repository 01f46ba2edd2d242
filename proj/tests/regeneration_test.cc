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

#include "anonkit/regeneration.h"

#include "anonkit/generator.h"
#include "anonkit/text_format.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace anonkit {
namespace {

class RegenerationTest : public ::testing::Test {
 protected:
  std::size_t Index(const char* name) const { return *schema_.IndexOf(name); }
  Dataset Repeat(const std::vector<Cell>& row, std::size_t n) const {
    Dataset d(schema_);
    for (std::size_t i = 0; i < n; ++i) d.AppendRecord(row);
    return d;
  }
  std::vector<Cell> BaseRow() const {
    std::vector<Cell> row;
    for (int64_t v : {190125, 40, 1, 2, 1, 93722, 10, 3, 1, 5000, 486}) {
      row.push_back(Cell::Point(v));
    }
    return row;
  }
  const Schema schema_ = PdSchema();
};

TEST_F(RegenerationTest, WildcardFollowsWeights) {
  std::vector<Cell> row = BaseRow();
  row[Index("race")] = Cell::Wildcard(schema_.attribute(Index("race")));
  Dataset d = Repeat(row, 10000);
  MaskedValueDistributions dist = {{Index("race"), {{1, 10.0}, {2, 30.0}}}};
  absl::StatusOr<Dataset> out = RegenerateMasked(d, dist, 42);
  ASSERT_TRUE(out.ok()) << out.status();
  std::size_t twos = 0;
  for (std::size_t i = 0; i < out->num_records(); ++i) {
    const Cell& c = out->cell(i, Index("race"));
    ASSERT_TRUE(c.is_point());
    ASSERT_TRUE(c.value() == 1 || c.value() == 2);
    twos += c.value() == 2;
  }
  EXPECT_NEAR(static_cast<double>(twos) / 10000.0, 0.75, 0.02);
}

TEST_F(RegenerationTest, PrefixRestrictsSupport) {
  std::vector<Cell> row = BaseRow();
  const AttributeSchema& zip = schema_.attribute(Index("patzip"));
  row[Index("patzip")] = *Cell::PrefixWildcard("937", 2, zip);
  Dataset d = Repeat(row, 2000);
  std::vector<std::pair<int64_t, double>> zips;
  for (int64_t z = 90000; z <= 96199; z += 7) zips.emplace_back(z, 1.0 + z % 5);
  absl::StatusOr<Dataset> out =
      RegenerateMasked(d, {{Index("patzip"), zips}}, 3);
  ASSERT_TRUE(out.ok()) << out.status();
  for (std::size_t i = 0; i < out->num_records(); ++i) {
    const Cell& c = out->cell(i, Index("patzip"));
    ASSERT_TRUE(c.is_point());
    EXPECT_GE(c.value(), 93700);
    EXPECT_LE(c.value(), 93799);
  }
}

TEST_F(RegenerationTest, UnmaskedDataUnchangedAndSeedsReproduce) {
  Dataset d = Repeat(BaseRow(), 10);
  for (uint64_t seed : {0ull, 1ull, 99ull}) {
    absl::StatusOr<Dataset> out = RegenerateMasked(d, {}, seed);
    ASSERT_TRUE(out.ok());
    EXPECT_EQ(*out, d);
  }
  std::vector<Cell> row = BaseRow();
  row[Index("age_yrs")] = Cell::Interval(30, 50);
  Dataset m = Repeat(row, 200);
  std::vector<std::pair<int64_t, double>> ages;
  for (int64_t a = 0; a <= 85; ++a) ages.emplace_back(a, 1.0);
  MaskedValueDistributions dist = {{Index("age_yrs"), ages}};
  const std::string a = SerializeDataset(*RegenerateMasked(m, dist, 5));
  const std::string b = SerializeDataset(*RegenerateMasked(m, dist, 5));
  const std::string c = SerializeDataset(*RegenerateMasked(m, dist, 6));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST_F(RegenerationTest, MissingSupportIsAnError) {
  std::vector<Cell> row = BaseRow();
  row[Index("age_yrs")] = Cell::Interval(30, 50);
  Dataset d = Repeat(row, 3);
  EXPECT_FALSE(RegenerateMasked(d, {}, 1).ok());
  MaskedValueDistributions outside = {{Index("age_yrs"), {{10, 1.0}, {60, 1.0}}}};
  absl::StatusOr<Dataset> out = RegenerateMasked(d, outside, 1);
  ASSERT_FALSE(out.ok());
  EXPECT_EQ(out.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST_F(RegenerationTest, CsvRoundTrip) {
  const std::string csv = "attribute,value,weight\nrace,1,10\nrace,2,30\nage_yrs,5,0.5\n";
  absl::StatusOr<MaskedValueDistributions> d = ParseDistributionsCsv(csv, schema_);
  ASSERT_TRUE(d.ok()) << d.status();
  EXPECT_EQ(d->at(Index("race")).size(), 2u);
  absl::StatusOr<MaskedValueDistributions> again =
      ParseDistributionsCsv(DistributionsToCsv(*d, schema_), schema_);
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(*again, *d);
  EXPECT_FALSE(ParseDistributionsCsv("a,b,c\n", schema_).ok());
  EXPECT_FALSE(ParseDistributionsCsv("attribute,value,weight\nnope,1,1\n", schema_).ok());
  EXPECT_FALSE(ParseDistributionsCsv("attribute,value,weight\nrace,1,-1\n", schema_).ok());
  EXPECT_FALSE(ParseDistributionsCsv("attribute,value,weight\nrace,99,1\n", schema_).ok());
}

}  // namespace
}  // namespace anonkit
