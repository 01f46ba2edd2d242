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

#ifndef ANONKIT_GENERATOR_H_
#define ANONKIT_GENERATOR_H_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "anonkit/config.h"
#include "anonkit/dataset.h"
#include "anonkit/schema.h"

namespace anonkit {

// Weighted support of a categorical marginal; weights need not sum to one.
using Marginal = std::vector<std::pair<int64_t, double>>;

// Synthetic stand-in for hospital discharge microdata. Columns:
//
//   oshpd_id  hospital id, county * 10000 + sequence    spatial QI
//   age_yrs   years, top-coded at 85                     census QI
//   sex, ethncty, race                                   census QI
//   patzip    5-digit ZIP                                census QI
//   patcnty   county code 1..58                          census QI
//   los       length of stay in days                     temporal QI
//   adm_qtr   admission quarter 1..4                     temporal QI
//   charge    total charges, dollars                     confidential
//   diag_p    principal diagnosis, 3-digit ICD-9 code    confidential
struct GeneratorSpec {
  std::size_t n = 0;
  uint64_t seed = 0;
  // Probability that a patient is treated in their own county; the rest pick
  // a hospital anywhere in the state.
  double hospital_county_coupling = 0.9;
  // Population-like weights per county code.
  Marginal county;
  Marginal age;
  Marginal sex;
  Marginal ethnicity;
  Marginal race;
  Marginal admission_quarter;
  Marginal diagnosis;
  double los_mean = 4.5;
  // log(charge) = log(charge_base) + charge_per_day * min(los, 30) + sigma * N.
  double charge_base = 18000.0;
  double charge_per_day = 0.12;
  double charge_sigma = 0.75;
};

GeneratorSpec DefaultGeneratorSpec(std::size_t n, uint64_t seed);

Schema PdSchema();

// Schema plus the safe-harbor masking order and disclosure predicates that
// go with PdSchema().
AnonkitConfig DefaultPdConfig();

absl::Status ValidateGeneratorSpec(const GeneratorSpec& spec);

// Deterministic in (spec, seed). n = 0 yields an empty dataset.
absl::StatusOr<Dataset> GeneratePdLike(const GeneratorSpec& spec);

}  // namespace anonkit

#endif  // ANONKIT_GENERATOR_H_
