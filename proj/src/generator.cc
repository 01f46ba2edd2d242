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

#include "anonkit/generator.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "absl/strings/str_cat.h"
#include "anonkit/random.h"
#include "anonkit/status_macros.h"

namespace anonkit {
namespace {

// Approximate county populations in thousands, by county code.
constexpr std::array<int, 58> kCountyPopulation = {
    1510, 1,    38,   220,  45,  21,   1049, 28,  181,  930,  28,   135,
    175,  18,   840,  152,  64,  35,   9819, 151, 252,  18,   88,   255,
    10,   14,   415,  136,  98,  3010, 348,  20,  2190, 1418, 55,   2035,
    3095, 805,  685,  270,  718, 424,  1781, 262, 177,  3,    45,   413,
    484,  514,  94,   63,   14,  442,  55,   823, 200,  72};

// Counties under roughly 60k residents; suppressed as a group.
constexpr std::array<int64_t, 17> kSmallCounties = {
    2, 3, 5, 6, 8, 11, 14, 18, 22, 25, 26, 32, 35, 46, 47, 53, 55};

constexpr int kZipBlock = 105;

int HospitalsInCounty(int county) {
  return std::max(1, static_cast<int>(
                         std::lround(kCountyPopulation[county - 1] / 40.0)));
}

int64_t ZipBase(int county) {
  return 90000 + static_cast<int64_t>(((county - 1) * 23) % 58) * kZipBlock;
}

class Sampler {
 public:
  explicit Sampler(const Marginal& m) {
    double total = 0.0;
    for (const auto& [v, w] : m) {
      if (w <= 0.0) continue;
      total += w;
      values_.push_back(v);
      cumulative_.push_back(total);
    }
  }
  int64_t Draw(std::mt19937_64& rng) const {
    const double target = UnitDraw(rng) * cumulative_.back();
    std::size_t pick = std::upper_bound(cumulative_.begin(), cumulative_.end(),
                                        target) -
                       cumulative_.begin();
    return values_[std::min(pick, values_.size() - 1)];
  }

 private:
  std::vector<int64_t> values_;
  std::vector<double> cumulative_;
};

double StandardNormal(std::mt19937_64& rng) {
  // Box-Muller on the portable unit draw; 1 - u keeps the log finite.
  const double u1 = 1.0 - UnitDraw(rng);
  const double u2 = UnitDraw(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

absl::Status CheckMarginal(const Marginal& m, const AttributeSchema& attr) {
  double total = 0.0;
  for (const auto& [v, w] : m) {
    if (!attr.InDomain(v)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "generator: ", attr.name, " value ", v, " outside the domain"));
    }
    if (!std::isfinite(w) || w < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("generator: ", attr.name, " has a bad weight"));
    }
    total += w;
  }
  if (!(total > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("generator: ", attr.name, " marginal has no mass"));
  }
  return absl::OkStatus();
}

std::vector<std::pair<int64_t, int64_t>> AgeBuckets20() {
  std::vector<std::pair<int64_t, int64_t>> b = {
      {0, 0}, {1, 4}, {5, 9}, {10, 14}, {15, 17}, {18, 19}};
  for (int64_t lo = 20; lo < 85; lo += 5) b.emplace_back(lo, lo + 4);
  b.emplace_back(85, 85);
  return b;
}

}  // namespace

Schema PdSchema() {
  using R = Role;
  using G = FeatureGroup;
  std::vector<AttributeSchema> attrs = {
      {"oshpd_id", R::kQuasiIdentifier, G::kSpatial, 0, 999999, 6},
      {"age_yrs", R::kQuasiIdentifier, G::kCensus, 0, 85, std::nullopt},
      {"sex", R::kQuasiIdentifier, G::kCensus, 1, 4, std::nullopt},
      {"ethncty", R::kQuasiIdentifier, G::kCensus, 1, 4, std::nullopt},
      {"race", R::kQuasiIdentifier, G::kCensus, 1, 6, std::nullopt},
      {"patzip", R::kQuasiIdentifier, G::kCensus, 0, 99999, 5},
      {"patcnty", R::kQuasiIdentifier, G::kCensus, 1, 58, 2},
      {"los", R::kQuasiIdentifier, G::kTemporal, 0, 999, std::nullopt},
      {"adm_qtr", R::kQuasiIdentifier, G::kTemporal, 1, 4, std::nullopt},
      {"charge", R::kConfidential, G::kNone, 0, 9999999, std::nullopt},
      {"diag_p", R::kConfidential, G::kNone, 1, 999, std::nullopt},
  };
  return *Schema::Create(std::move(attrs));
}

AnonkitConfig DefaultPdConfig() {
  AnonkitConfig config;
  config.schema = PdSchema();
  const Schema& s = config.schema;
  auto idx = [&](absl::string_view name) { return *s.IndexOf(name); };
  auto suppress = [&](absl::string_view name) {
    MaskingStep step;
    step.attribute = idx(name);
    step.action = MaskAction::kSuppress;
    return step;
  };
  std::vector<MaskingStep>& steps = config.masking_order.steps;

  MaskingStep age20;
  age20.attribute = idx("age_yrs");
  age20.action = MaskAction::kCoarsen;
  age20.buckets = AgeBuckets20();
  age20.label = "age_20_groups";
  steps.push_back(age20);
  steps.push_back(suppress("ethncty"));
  steps.push_back(suppress("race"));
  steps.push_back(suppress("sex"));
  MaskingStep age5 = age20;
  age5.buckets = {{0, 0}, {1, 17}, {18, 34}, {35, 64}, {65, 85}};
  age5.label = "age_5_groups";
  steps.push_back(age5);
  steps.push_back(suppress("age_yrs"));
  steps.push_back(suppress("adm_qtr"));
  MaskingStep zip3;
  zip3.attribute = idx("patzip");
  zip3.action = MaskAction::kTruncateDigits;
  zip3.digits = 2;
  zip3.label = "zip3";
  steps.push_back(zip3);
  MaskingStep small = suppress("patcnty");
  small.only_values.assign(kSmallCounties.begin(), kSmallCounties.end());
  small.label = "small_counties";
  steps.push_back(small);
  steps.push_back(suppress("patzip"));

  PredicateSpec over100k;
  over100k.name = "charges_over_100k";
  over100k.attribute = "charge";
  over100k.min = 100001;
  PredicateSpec top_decile;
  top_decile.name = "charges_top_decile";
  top_decile.attribute = "charge";
  top_decile.top_fraction = 0.1;
  PredicateSpec cancer;
  cancer.name = "cancer";
  cancer.attribute = "diag_p";
  cancer.min = 140;
  cancer.max = 239;
  config.predicates = {over100k, top_decile, cancer};
  config.closeness_attribute = "charge";
  return config;
}

GeneratorSpec DefaultGeneratorSpec(std::size_t n, uint64_t seed) {
  GeneratorSpec spec;
  spec.n = n;
  spec.seed = seed;
  for (int c = 1; c <= 58; ++c) {
    spec.county.emplace_back(c, kCountyPopulation[c - 1]);
  }
  // Newborn spike, then flat bands; 85 collects everyone older.
  spec.age.emplace_back(0, 12.0);
  for (int a = 1; a <= 84; ++a) {
    double w = a < 18 ? 0.6 : a < 45 ? 1.3 : a < 65 ? 1.4 : 1.8;
    spec.age.emplace_back(a, w);
  }
  spec.age.emplace_back(85, 4.0);
  spec.sex = {{1, 0.44}, {2, 0.56}, {3, 0.0005}, {4, 0.0005}};
  spec.ethnicity = {{1, 0.30}, {2, 0.65}, {3, 0.04}, {4, 0.01}};
  spec.race = {{1, 0.62}, {2, 0.08}, {3, 0.01},
               {4, 0.10}, {5, 0.17}, {6, 0.02}};
  spec.admission_quarter = {{1, 1.0}, {2, 1.0}, {3, 1.0}, {4, 1.0}};
  spec.diagnosis = {
      {486, 6.0}, {428, 5.0}, {410, 4.0}, {414, 3.0}, {427, 4.0},
      {434, 3.0}, {491, 3.0}, {599, 3.0}, {38, 5.0},  {715, 4.0},
      {996, 3.0}, {682, 2.0}, {577, 1.0}, {540, 1.5}, {574, 2.0},
      {250, 2.0}, {296, 2.0}, {295, 1.5}, {303, 1.0}, {650, 8.0},
      {664, 3.0}, {644, 2.0}, {765, 2.0}, {774, 2.0}, {322, 0.2},
      {785, 0.5}, {820, 1.5}, {153, 0.8}, {162, 1.0}, {174, 0.8},
      {185, 0.6}, {189, 0.3}, {151, 0.3}, {188, 0.3}, {204, 0.3},
  };
  return spec;
}

absl::Status ValidateGeneratorSpec(const GeneratorSpec& spec) {
  const Schema schema = PdSchema();
  auto attr = [&](absl::string_view name) -> const AttributeSchema& {
    return schema.attribute(*schema.IndexOf(name));
  };
  if (!(spec.hospital_county_coupling >= 0.0 &&
        spec.hospital_county_coupling <= 1.0)) {
    return absl::InvalidArgumentError(
        "generator: hospital_county_coupling must be in [0, 1]");
  }
  if (!(spec.los_mean >= 0.0) || !std::isfinite(spec.los_mean)) {
    return absl::InvalidArgumentError("generator: los_mean must be >= 0");
  }
  if (!(spec.charge_base > 0.0) || !(spec.charge_sigma >= 0.0) ||
      !std::isfinite(spec.charge_per_day)) {
    return absl::InvalidArgumentError("generator: bad charge parameters");
  }
  RETURN_IF_ERROR(CheckMarginal(spec.county, attr("patcnty")));
  RETURN_IF_ERROR(CheckMarginal(spec.age, attr("age_yrs")));
  RETURN_IF_ERROR(CheckMarginal(spec.sex, attr("sex")));
  RETURN_IF_ERROR(CheckMarginal(spec.ethnicity, attr("ethncty")));
  RETURN_IF_ERROR(CheckMarginal(spec.race, attr("race")));
  RETURN_IF_ERROR(CheckMarginal(spec.admission_quarter, attr("adm_qtr")));
  RETURN_IF_ERROR(CheckMarginal(spec.diagnosis, attr("diag_p")));
  return absl::OkStatus();
}

absl::StatusOr<Dataset> GeneratePdLike(const GeneratorSpec& spec) {
  RETURN_IF_ERROR(ValidateGeneratorSpec(spec));
  Dataset d(PdSchema());
  d.Reserve(spec.n);
  std::mt19937_64 rng(spec.seed);
  const Sampler county(spec.county), age(spec.age), sex(spec.sex),
      ethnicity(spec.ethnicity), race(spec.race),
      quarter(spec.admission_quarter), diagnosis(spec.diagnosis);
  const double stay_p = 1.0 / (1.0 + spec.los_mean);
  const double log_keep = std::log1p(-stay_p);
  const double log_base = std::log(spec.charge_base);

  std::vector<Cell> row(d.schema().size());
  for (std::size_t i = 0; i < spec.n; ++i) {
    const int64_t home = county.Draw(rng);
    int64_t treated = home;
    if (UnitDraw(rng) >= spec.hospital_county_coupling) {
      treated = county.Draw(rng);
    }
    const int64_t seq = 1 + static_cast<int64_t>(UniformBelow(
                                rng, HospitalsInCounty(static_cast<int>(treated))));
    const int64_t zip =
        ZipBase(static_cast<int>(home)) +
        static_cast<int64_t>(UniformBelow(rng, kZipBlock));
    int64_t los = 0;
    if (stay_p < 1.0) {
      const double u = 1.0 - UnitDraw(rng);
      los = std::min<int64_t>(999, static_cast<int64_t>(std::log(u) / log_keep));
    }
    const double log_charge = log_base +
                              spec.charge_per_day *
                                  static_cast<double>(std::min<int64_t>(los, 30)) +
                              spec.charge_sigma * StandardNormal(rng);
    const int64_t charge = static_cast<int64_t>(
        std::clamp(std::round(std::exp(log_charge)), 100.0, 9999999.0));

    row[0] = Cell::Point(treated * 10000 + seq);
    row[1] = Cell::Point(age.Draw(rng));
    row[2] = Cell::Point(sex.Draw(rng));
    row[3] = Cell::Point(ethnicity.Draw(rng));
    row[4] = Cell::Point(race.Draw(rng));
    row[5] = Cell::Point(zip);
    row[6] = Cell::Point(home);
    row[7] = Cell::Point(los);
    row[8] = Cell::Point(quarter.Draw(rng));
    row[9] = Cell::Point(charge);
    row[10] = Cell::Point(diagnosis.Draw(rng));
    d.AppendRecord(row);
  }
  return d;
}

}  // namespace anonkit
