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

#include "anonkit/k_anonymity.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "anonkit/status_macros.h"

namespace anonkit {
namespace {

// Positions of `records` in ascending squared distance to the origin, ties by
// position. Squared distance is monotone in the distance itself.
void SortByDistanceToOrigin(const Dataset& d, const AttributeSet& q,
                            const AttributeStats& stats,
                            std::vector<std::size_t>& records) {
  std::vector<std::pair<double, std::size_t>> keyed;
  keyed.reserve(records.size());
  for (std::size_t r : records) {
    keyed.emplace_back(SquaredDistanceToOrigin(d.record(r), q, stats), r);
  }
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t i = 0; i < keyed.size(); ++i) records[i] = keyed[i].second;
}

absl::Status CheckClusteringInputs(const Dataset& d, std::size_t k,
                                   const AttributeSet& q,
                                   const AttributeStats& stats) {
  RETURN_IF_ERROR(ValidateAttributeSet(d.schema(), q));
  if (k < 2) {
    return absl::InvalidArgumentError(absl::StrCat("k must be >= 2, got ", k));
  }
  if (k > d.num_records()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "k = ", k, " exceeds the record count ", d.num_records()));
  }
  if (stats.sigma.size() < d.num_attributes()) {
    return absl::InvalidArgumentError("statistics do not cover the schema");
  }
  return RequirePoints(d, q, "clustering anonymization");
}

}  // namespace

Dataset GeneralizeClusters(const Dataset& d,
                           const std::vector<std::vector<std::size_t>>& clusters,
                           const AttributeSet& q) {
  Dataset out = d;
  for (const std::vector<std::size_t>& cluster : clusters) {
    if (cluster.empty()) continue;
    for (std::size_t a : q) {
      int64_t lo = d.cell(cluster.front(), a).lo();
      int64_t hi = d.cell(cluster.front(), a).hi();
      for (std::size_t r : cluster) {
        lo = std::min(lo, d.cell(r, a).lo());
        hi = std::max(hi, d.cell(r, a).hi());
      }
      const Cell hull = Cell::Interval(lo, hi);
      for (std::size_t r : cluster) out.mutable_cell(r, a) = hull;
    }
  }
  return out;
}

absl::StatusOr<ClusteredDataset> KAnonymize(const Dataset& d, std::size_t k,
                                            const AttributeSet& q,
                                            const AttributeStats& stats) {
  RETURN_IF_ERROR(CheckClusteringInputs(d, k, q, stats));
  const std::size_t n = d.num_records();
  std::vector<std::size_t> sorted(n);
  std::iota(sorted.begin(), sorted.end(), 0);
  SortByDistanceToOrigin(d, q, stats, sorted);

  std::vector<std::vector<std::size_t>> clusters;
  clusters.reserve(n / k);
  std::size_t pos = 0;
  while (n - pos >= 2 * k) {
    clusters.emplace_back(sorted.begin() + pos, sorted.begin() + pos + k);
    pos += k;
  }
  clusters.emplace_back(sorted.begin() + pos, sorted.end());
  Dataset out = GeneralizeClusters(d, clusters, q);
  return ClusteredDataset{std::move(out), std::move(clusters)};
}

double ClosenessUpperBound(std::size_t n, std::size_t k) {
  if (n < 2 || k == 0) return 0.0;
  return static_cast<double>(n - k) /
         (2.0 * static_cast<double>(n - 1) * static_cast<double>(k));
}

absl::StatusOr<ClosenessParams> ClosenessBounds(std::size_t n, std::size_t k,
                                                std::optional<double> t) {
  if (k < 2 || k > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 2 <= k <= n, got k = ", k, ", n = ", n));
  }
  const double bound = ClosenessUpperBound(n, k);
  ClosenessParams p;
  p.k = k;
  p.n = n;
  p.t = t.value_or(bound);
  if (!(p.t > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("closeness level t must be positive, got ", p.t));
  }
  // Slack of a few ulps so that a bound computed elsewhere is accepted.
  if (p.t > bound * (1.0 + 1e-12)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "t = ", p.t, " exceeds the attainable bound (n-k)/(2(n-1)k) = ", bound,
        " for n = ", n, ", k = ", k));
  }
  const long double x = static_cast<long double>(n) /
                        (2.0L * static_cast<long double>(n - 1) * p.t + 1.0L);
  // An x within rounding error of an integer is that integer; otherwise a
  // t taken at the bound would ceil to k + 1.
  const long double nearest = std::round(x);
  const long double ceiling =
      std::fabs(x - nearest) <= 1e-9L * x ? nearest : std::ceil(x);
  p.effective_cluster_size =
      std::max<std::size_t>(k, static_cast<std::size_t>(ceiling));
  return p;
}

std::size_t StratifiedClusterSize(std::size_t n, std::size_t cluster_size) {
  std::size_t kk = std::max<std::size_t>(cluster_size, 1);
  if (kk > n) return n;
  while (true) {
    const std::size_t per = n / kk;
    const std::size_t rem = n % kk;
    if (rem <= per) return kk;
    kk += rem / per;
  }
}

absl::StatusOr<ClusteredDataset> KAnonymizeTClose(
    const Dataset& d, std::size_t k, double t, std::size_t confidential,
    const AttributeSet& q, const AttributeStats& stats) {
  RETURN_IF_ERROR(CheckClusteringInputs(d, k, q, stats));
  if (confidential >= d.num_attributes()) {
    return absl::InvalidArgumentError("confidential attribute out of range");
  }
  if (std::find(q.begin(), q.end(), confidential) != q.end()) {
    return absl::InvalidArgumentError(
        "the confidential attribute cannot be a generalized attribute");
  }
  RETURN_IF_ERROR(RequirePoints(d, {confidential}, "t-closeness"));
  const std::size_t n = d.num_records();
  ASSIGN_OR_RETURN(ClosenessParams params, ClosenessBounds(n, k, t));
  const std::size_t kk = StratifiedClusterSize(n, params.effective_cluster_size);

  std::vector<std::size_t> by_conf(n);
  std::iota(by_conf.begin(), by_conf.end(), 0);
  std::stable_sort(by_conf.begin(), by_conf.end(),
                   [&](std::size_t x, std::size_t y) {
                     return d.cell(x, confidential).value() <
                            d.cell(y, confidential).value();
                   });

  const std::size_t per = n / kk;
  std::vector<std::vector<std::size_t>> strata;
  strata.reserve(kk + 1);
  for (std::size_t s = 0; s < kk; ++s) {
    strata.emplace_back(by_conf.begin() + s * per,
                        by_conf.begin() + (s + 1) * per);
  }
  if (n % kk != 0) strata.emplace_back(by_conf.begin() + kk * per, by_conf.end());
  for (std::vector<std::size_t>& stratum : strata) {
    SortByDistanceToOrigin(d, q, stats, stratum);
  }

  std::vector<std::vector<std::size_t>> clusters(per);
  for (std::size_t j = 0; j < per; ++j) {
    for (const std::vector<std::size_t>& stratum : strata) {
      if (j < stratum.size()) clusters[j].push_back(stratum[j]);
    }
  }
  Dataset out = GeneralizeClusters(d, clusters, q);
  return ClusteredDataset{std::move(out), std::move(clusters)};
}

}  // namespace anonkit
