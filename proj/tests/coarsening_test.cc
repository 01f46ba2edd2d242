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

#include "anonkit/coarsening.h"

#include <random>

#include "anonkit/risk.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace anonkit {
namespace {

using Intervals = std::vector<std::pair<int64_t, int64_t>>;

const AttributeSchema kAge{"age_yrs", Role::kQuasiIdentifier,
                           FeatureGroup::kCensus, 0, 85, std::nullopt};

TEST(CoarseningIntervalsTest, AgeQuarters) {
  EXPECT_EQ(*CoarseningIntervals(kAge, 4),
            (Intervals{{0, 20}, {21, 42}, {43, 63}, {64, 85}}));
}

TEST(CoarseningIntervalsTest, AgeEighths) {
  EXPECT_EQ(*CoarseningIntervals(kAge, 8),
            (Intervals{{0, 9}, {10, 20}, {21, 31}, {32, 42},
                       {43, 52}, {53, 63}, {64, 74}, {75, 85}}));
}

TEST(CoarseningIntervalsTest, AgeSixteenths) {
  EXPECT_EQ(*CoarseningIntervals(kAge, 16),
            (Intervals{{0, 4},   {5, 9},   {10, 15}, {16, 20},
                       {21, 25}, {26, 31}, {32, 36}, {37, 42},
                       {43, 47}, {48, 52}, {53, 58}, {59, 63},
                       {64, 68}, {69, 74}, {75, 79}, {80, 85}}));
}

TEST(CoarseningIntervalsTest, PartitionDomainForEveryResolution) {
  for (uint64_t r = 1; r <= kAge.DomainWidth(); ++r) {
    absl::StatusOr<Intervals> iv = CoarseningIntervals(kAge, r);
    ASSERT_TRUE(iv.ok());
    ASSERT_EQ(iv->size(), r);
    EXPECT_EQ(iv->front().first, 0);
    EXPECT_EQ(iv->back().second, 85);
    for (std::size_t i = 0; i < iv->size(); ++i) {
      EXPECT_LE((*iv)[i].first, (*iv)[i].second);
      if (i > 0) EXPECT_EQ((*iv)[i].first, (*iv)[i - 1].second + 1);
    }
  }
  EXPECT_FALSE(CoarseningIntervals(kAge, 0).ok());
  EXPECT_FALSE(CoarseningIntervals(kAge, 87).ok());
}

TEST(CoarseningIntervalsTest, HugeDomainDoesNotOverflow) {
  const AttributeSchema wide{"w", Role::kQuasiIdentifier, FeatureGroup::kCensus,
                             INT64_MIN / 2, INT64_MAX / 2, std::nullopt};
  absl::StatusOr<Intervals> iv = CoarseningIntervals(wide, 3);
  ASSERT_TRUE(iv.ok());
  EXPECT_EQ(iv->front().first, wide.dmin);
  EXPECT_EQ(iv->back().second, wide.dmax);
}

TEST(ResolutionForFractionTest, CapsAtDomainWidth) {
  EXPECT_EQ(ResolutionForFraction(kAge, 8), 8u);
  EXPECT_EQ(ResolutionForFraction(kAge, 1000), 86u);
  const AttributeSchema quarter{"q", Role::kQuasiIdentifier,
                                FeatureGroup::kTemporal, 1, 4, std::nullopt};
  EXPECT_EQ(ResolutionForFraction(quarter, 32), 4u);
}

TEST(CoarsenTest, MapsEachValueToItsInterval) {
  std::mt19937_64 rng(1);
  const Schema s = testing::SmallSchema(2, 85);
  Dataset d = testing::RandomPointDataset(s, 300, rng);
  CoarseningSpec spec;
  spec.resolution = {{0, 8}, {1, 5}};
  absl::StatusOr<Dataset> out = Coarsen(d, spec);
  ASSERT_TRUE(out.ok()) << out.status();
  const Intervals iv0 = *CoarseningIntervals(s.attribute(0), 8);
  const Intervals iv1 = *CoarseningIntervals(s.attribute(1), 5);
  for (std::size_t i = 0; i < d.num_records(); ++i) {
    const int64_t v0 = d.cell(i, 0).value();
    const int64_t v1 = d.cell(i, 1).value();
    bool found0 = false, found1 = false;
    for (const auto& [lo, hi] : iv0) {
      if (lo <= v0 && v0 <= hi) {
        EXPECT_EQ(out->cell(i, 0), Cell::Interval(lo, hi));
        found0 = true;
      }
    }
    for (const auto& [lo, hi] : iv1) {
      if (lo <= v1 && v1 <= hi) {
        EXPECT_EQ(out->cell(i, 1), Cell::Interval(lo, hi));
        found1 = true;
      }
    }
    EXPECT_TRUE(found0 && found1);
    EXPECT_EQ(out->cell(i, 2), d.cell(i, 2));
    EXPECT_EQ(out->original_index(i), d.original_index(i));
  }
}

TEST(CoarsenTest, FullResolutionIsIdentity) {
  std::mt19937_64 rng(2);
  const Schema s = testing::SmallSchema(2, 20);
  Dataset d = testing::RandomPointDataset(s, 100, rng);
  CoarseningSpec spec;
  spec.resolution = {{0, 21}, {1, 21}};
  EXPECT_EQ(*Coarsen(d, spec), d);
}

TEST(CoarsenTest, RejectsConfidentialAndMasked) {
  const Schema s = testing::SmallSchema(1, 20);
  Dataset d(s);
  d.AppendRecord(std::vector<Cell>{Cell::Interval(1, 3), Cell::Point(0)});
  CoarseningSpec spec;
  spec.resolution = {{0, 2}};
  EXPECT_FALSE(Coarsen(d, spec).ok());
  Dataset p(s);
  p.AppendRecord(std::vector<Cell>{Cell::Point(1), Cell::Point(0)});
  CoarseningSpec conf;
  conf.resolution = {{1, 2}};
  EXPECT_FALSE(Coarsen(p, conf).ok());
}

// A lone record in the top corner stays unique at every resolution >= 2.
TEST(CoarsenTest, AdversarialRecordSurvivesEveryResolution) {
  const Schema s = testing::SmallSchema(2, 15);
  Dataset d(s);
  for (int i = 0; i < 20; ++i) {
    d.AppendRecord(std::vector<Cell>{Cell::Point(i % 3), Cell::Point(i % 2),
                                     Cell::Point(0)});
  }
  d.AppendRecord(std::vector<Cell>{Cell::Point(15), Cell::Point(15), Cell::Point(0)});
  for (uint64_t r = 2; r <= 16; ++r) {
    CoarseningSpec spec;
    spec.resolution = {{0, r}, {1, r}};
    absl::StatusOr<Dataset> out = Coarsen(d, spec);
    ASSERT_TRUE(out.ok());
    absl::StatusOr<RiskReport> risk = ReidentificationRisk(*out, {0, 1});
    ASSERT_TRUE(risk.ok());
    EXPECT_GE(risk->unique_count, 1u) << "r=" << r;
  }
}

}  // namespace
}  // namespace anonkit
