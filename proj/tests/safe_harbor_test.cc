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

#include "anonkit/safe_harbor.h"

#include "anonkit/generator.h"
#include "anonkit/risk.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "test_util.h"

namespace anonkit {
namespace {

class SafeHarborTest : public ::testing::Test {
 protected:
  Dataset Records(const std::vector<std::vector<int64_t>>& rows) {
    Dataset d(schema_);
    for (const auto& r : rows) {
      std::vector<Cell> cells;
      for (int64_t v : r) cells.push_back(Cell::Point(v));
      d.AppendRecord(cells);
    }
    return d;
  }
  std::size_t Index(const char* name) const { return *schema_.IndexOf(name); }

  const AnonkitConfig config_ = DefaultPdConfig();
  const Schema& schema_ = config_.schema;
  const MaskingOrder& order_ = config_.masking_order;
  const AttributeSet q_ = schema_.QuasiIdentifiers();
};

TEST_F(SafeHarborTest, OrderIsValid) {
  EXPECT_TRUE(ValidateMaskingOrder(schema_, order_).ok());
  EXPECT_EQ(order_.steps.size(), 10u);
  EXPECT_EQ(order_.steps[0].buckets.size(), 20u);
  EXPECT_EQ(order_.steps[4].buckets.size(), 5u);
}

TEST_F(SafeHarborTest, ValidationRejectsBadSteps) {
  MaskingOrder bad = order_;
  bad.steps[0].buckets.erase(bad.steps[0].buckets.begin() + 3);
  EXPECT_FALSE(ValidateMaskingOrder(schema_, bad).ok());
  MaskingStep conf;
  conf.attribute = Index("charge");
  EXPECT_FALSE(ValidateMaskingOrder(schema_, MaskingOrder{{conf}}).ok());
  MaskingStep trunc;
  trunc.attribute = Index("patzip");
  trunc.action = MaskAction::kTruncateDigits;
  trunc.digits = 5;
  EXPECT_FALSE(ValidateMaskingOrder(schema_, MaskingOrder{{trunc}}).ok());
  trunc.attribute = Index("age_yrs");
  trunc.digits = 1;
  EXPECT_FALSE(ValidateMaskingOrder(schema_, MaskingOrder{{trunc}}).ok());
}

TEST_F(SafeHarborTest, SingleSteps) {
  const AttributeSchema& age = schema_.attribute(Index("age_yrs"));
  const AttributeSchema& zip = schema_.attribute(Index("patzip"));
  const AttributeSchema& county = schema_.attribute(Index("patcnty"));
  EXPECT_EQ(*ApplyMaskingStep(Cell::Point(37), order_.steps[0], age),
            Cell::Interval(35, 39));
  EXPECT_EQ(*ApplyMaskingStep(Cell::Point(0), order_.steps[0], age), Cell::Point(0));
  EXPECT_EQ(*ApplyMaskingStep(Cell::Interval(35, 39), order_.steps[4], age),
            Cell::Interval(35, 64));
  EXPECT_EQ(*ApplyMaskingStep(Cell::Interval(15, 19), order_.steps[4], age),
            Cell::Interval(1, 34));
  EXPECT_EQ(*ApplyMaskingStep(Cell::Point(37), order_.steps[5], age),
            Cell::Wildcard(age));
  const Cell z = *ApplyMaskingStep(Cell::Point(93722), order_.steps[7], zip);
  EXPECT_EQ(FormatCell(z, zip), "937**");
  // Small-county suppression leaves large counties alone.
  EXPECT_EQ(*ApplyMaskingStep(Cell::Point(19), order_.steps[8], county),
            Cell::Point(19));
  EXPECT_EQ(*ApplyMaskingStep(Cell::Point(2), order_.steps[8], county),
            Cell::Wildcard(county));
  EXPECT_EQ(*ApplyMaskingStep(Cell::Wildcard(zip), order_.steps[7], zip),
            Cell::Wildcard(zip));
}

TEST_F(SafeHarborTest, NoUniquesMeansNoChange) {
  const std::vector<int64_t> r = {190125, 40, 1, 2, 1, 93722, 10, 3, 1, 5000, 486};
  Dataset d = Records({r, r, r});
  absl::StatusOr<SafeHarborResult> out = SafeHarborMask(d, order_, q_);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out->dataset, d);
  EXPECT_TRUE(out->residual_records.empty());
  EXPECT_EQ(out->passes, 0u);
}

TEST_F(SafeHarborTest, AgeBucketsAloneResolveExactAges) {
  Dataset d = Records({{190125, 30, 1, 2, 1, 93722, 10, 3, 1, 5000, 486},
                       {190125, 31, 1, 2, 1, 93722, 10, 3, 1, 6000, 322},
                       {190125, 33, 1, 2, 1, 93722, 10, 3, 1, 7000, 174}});
  absl::StatusOr<RiskReport> before = ReidentificationRisk(d, q_);
  EXPECT_EQ(before->unique_count, 3u);
  absl::StatusOr<SafeHarborResult> out = SafeHarborMask(d, order_, q_);
  ASSERT_TRUE(out.ok()) << out.status();
  const std::size_t age = Index("age_yrs");
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(out->dataset.cell(i, age), Cell::Interval(30, 34));
    EXPECT_EQ(out->steps_consumed[i], 1u);
    for (std::size_t a = 0; a < schema_.size(); ++a) {
      if (a != age) EXPECT_EQ(out->dataset.cell(i, a), d.cell(i, a));
    }
  }
  EXPECT_TRUE(out->residual_records.empty());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_FALSE(oracle::UniqueByEnumeration(out->dataset, i,
                                             {age, Index("sex"), Index("race")}));
  }
}

TEST_F(SafeHarborTest, AdversarialRecordStaysUnique) {
  std::vector<std::vector<int64_t>> rows;
  for (int64_t age : {20, 45, 60, 75}) {
    const std::vector<int64_t> r = {190125, age, 2, 2, 1, 93722, 10, 3, 2, 5000, 486};
    rows.push_back(r);
    rows.push_back(r);
  }
  // ZIP prefix 999 appears nowhere else.
  rows.push_back({190125, 45, 2, 2, 1, 99999, 2, 3, 2, 5000, 486});
  Dataset d = Records(rows);
  absl::StatusOr<SafeHarborResult> out = SafeHarborMask(d, order_, q_);
  ASSERT_TRUE(out.ok()) << out.status();
  EXPECT_EQ(out->residual_records, (std::vector<std::size_t>{8}));
  EXPECT_EQ(out->steps_consumed[8], order_.steps.size());
  const Dataset& m = out->dataset;
  for (const char* name : {"age_yrs", "ethncty", "race", "sex", "adm_qtr",
                           "patzip", "patcnty"}) {
    EXPECT_EQ(m.cell(8, Index(name)).kind(), CellKind::kWildcard) << name;
  }
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t a = 0; a < schema_.size(); ++a) {
      EXPECT_EQ(m.cell(i, a), d.cell(i, a));
    }
  }
  EXPECT_TRUE(oracle::UniqueByEnumeration(m, 8, q_));
}

TEST_F(SafeHarborTest, NeverLeavesFixableUniquesOnGeneratedData) {
  absl::StatusOr<Dataset> d = GeneratePdLike(DefaultGeneratorSpec(2000, 12));
  ASSERT_TRUE(d.ok());
  const AttributeSet census = schema_.QuasiIdentifiers({FeatureGroup::kCensus});
  absl::StatusOr<SafeHarborResult> out = SafeHarborMask(*d, order_, census);
  ASSERT_TRUE(out.ok()) << out.status();
  WorstCaseUniqueness eval(out->dataset, census);
  absl::StatusOr<std::vector<std::size_t>> u = eval.UniqueRecords();
  ASSERT_TRUE(u.ok());
  EXPECT_EQ(*u, out->residual_records);
  for (std::size_t r : out->residual_records) {
    EXPECT_EQ(out->steps_consumed[r], order_.steps.size());
  }
  absl::StatusOr<RiskReport> before = ReidentificationRisk(*d, census);
  EXPECT_LT(u->size(), before->unique_count);
}

}  // namespace
}  // namespace anonkit
