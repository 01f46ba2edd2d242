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

#include "anonkit/config.h"

#include "anonkit/generator.h"
#include "anonkit/text_format.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace anonkit {
namespace {

TEST(ConfigTest, DefaultConfigRoundTripsThroughJson) {
  const AnonkitConfig config = DefaultPdConfig();
  const std::string json = ConfigToJson(config);
  absl::StatusOr<AnonkitConfig> back = ParseConfigJson(json);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(back->schema, config.schema);
  EXPECT_EQ(back->masking_order.steps.size(), config.masking_order.steps.size());
  EXPECT_EQ(ConfigToJson(*back), json);
}

TEST(ConfigTest, CheckedInConfigMatchesDefault) {
  absl::StatusOr<std::string> text =
      ReadFile(std::string(ANONKIT_SOURCE_DIR) + "/configs/pd_schema.json");
  ASSERT_TRUE(text.ok()) << text.status();
  EXPECT_EQ(*text, ConfigToJson(DefaultPdConfig()));
}

TEST(ConfigTest, RejectsMalformedDocuments) {
  const std::vector<std::string> bad = {
      "{",
      "[]",
      R"({"attributes": []})",
      R"({"attributes": [{"name": "a", "role": "qi", "domain": [3, 1]}]})",
      R"({"attributes": [{"name": "a", "role": "boss", "domain": [0, 1]}]})",
      R"({"attributes": [{"name": "a", "role": "qi", "domain": [0, 1], "extra": 1}]})",
      R"({"attributes": [{"name": "a", "role": "qi", "domain": [0, 1]},
                         {"name": "c", "role": "confidential", "domain": [0, 1]}],
          "masking_order": [{"attribute": "a", "action": "explode"}]})",
      R"({"attributes": [{"name": "a", "role": "qi", "domain": [0, 1]},
                         {"name": "c", "role": "confidential", "domain": [0, 1]}],
          "disclosure_predicates": [{"name": "p", "attribute": "zz", "min": 1}]})",
      R"({"attributes": [{"name": "a", "role": "qi", "domain": [0, 1]},
                         {"name": "c", "role": "confidential", "domain": [0, 1]}],
          "disclosure_predicates": [{"name": "p", "attribute": "c"}]})",
      R"({"attributes": [{"name": "a", "role": "qi", "domain": [0, 1]},
                         {"name": "c", "role": "confidential", "domain": [0, 1]}],
          "closeness_attribute": "a"})",
      R"({"attributes": [{"name": "a", "role": "qi", "domain": [0, 1]}]})",
  };
  for (const std::string& doc : bad) {
    EXPECT_FALSE(ParseConfigJson(doc).ok()) << doc;
  }
}

TEST(ConfigTest, TopFractionResolvesAgainstData) {
  absl::StatusOr<Dataset> d = GeneratePdLike(DefaultGeneratorSpec(5000, 1));
  ASSERT_TRUE(d.ok());
  PredicateSpec spec;
  spec.name = "top";
  spec.attribute = "charge";
  spec.top_fraction = 0.1;
  absl::StatusOr<ValuePredicate> z = ResolvePredicate(spec, *d);
  ASSERT_TRUE(z.ok());
  ASSERT_TRUE(z->min.has_value());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < d->num_records(); ++i) {
    hits += z->Matches(d->cell(i, z->attribute).value());
  }
  EXPECT_GE(hits, 500u);
  EXPECT_LE(hits, 510u);
}

TEST(ConfigTest, GroupLists) {
  EXPECT_TRUE(ParseGroupList("all")->empty());
  absl::StatusOr<std::vector<FeatureGroup>> g = ParseGroupList("temporal, census");
  ASSERT_TRUE(g.ok());
  EXPECT_EQ(GroupListName(*g), "census+temporal");
  EXPECT_FALSE(ParseGroupList("census,astral").ok());
}

TEST(GeneratorTest, EmptyDatasetHasHeader) {
  absl::StatusOr<Dataset> d = GeneratePdLike(DefaultGeneratorSpec(0, 1));
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(d->num_records(), 0u);
  EXPECT_EQ(SerializeDataset(*d),
            "oshpd_id,age_yrs,sex,ethncty,race,patzip,patcnty,los,adm_qtr,"
            "charge,diag_p\n");
}

TEST(GeneratorTest, DeterministicAndValid) {
  const GeneratorSpec spec = DefaultGeneratorSpec(3000, 77);
  const std::string a = SerializeDataset(*GeneratePdLike(spec));
  const std::string b = SerializeDataset(*GeneratePdLike(spec));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, SerializeDataset(*GeneratePdLike(DefaultGeneratorSpec(3000, 78))));
  absl::StatusOr<Dataset> d = ParseDataset(a, PdSchema());
  ASSERT_TRUE(d.ok()) << d.status();
  EXPECT_TRUE(d->Validate().ok());
  // Roughly a tenth of the charges exceed 100000.
  std::size_t high = 0;
  const std::size_t charge = *d->schema().IndexOf("charge");
  for (std::size_t i = 0; i < d->num_records(); ++i) {
    high += d->cell(i, charge).value() > 100000;
  }
  EXPECT_GT(high, 150u);
  EXPECT_LT(high, 600u);
}

TEST(GeneratorTest, RejectsInvalidMarginals) {
  GeneratorSpec spec = DefaultGeneratorSpec(10, 1);
  spec.sex = {{1, 0.0}};
  EXPECT_FALSE(GeneratePdLike(spec).ok());
  spec = DefaultGeneratorSpec(10, 1);
  spec.age = {{90, 1.0}};
  EXPECT_FALSE(GeneratePdLike(spec).ok());
  spec = DefaultGeneratorSpec(10, 1);
  spec.race = {{1, -1.0}, {2, 3.0}};
  EXPECT_FALSE(GeneratePdLike(spec).ok());
  spec = DefaultGeneratorSpec(10, 1);
  spec.hospital_county_coupling = 1.5;
  EXPECT_FALSE(GeneratePdLike(spec).ok());
}

}  // namespace
}  // namespace anonkit
