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

#ifndef ANONKIT_K_ANONYMITY_H_
#define ANONKIT_K_ANONYMITY_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "anonkit/dataset.h"
#include "anonkit/distance.h"
#include "anonkit/schema.h"

namespace anonkit {

// An anonymized dataset together with the clusters that produced it (record
// positions, in formation order).
struct ClusteredDataset {
  Dataset dataset;
  std::vector<std::vector<std::size_t>> clusters;
};

// Generalization-based k-anonymity. Records are sorted by standardized
// distance to the all-zeros record over `q` (ties by position), cut into
// consecutive groups of k while at least 2k remain, and the rest form the
// last group. Within a group each attribute of `q` becomes [min; max].
// Output keeps the input record order.
absl::StatusOr<ClusteredDataset> KAnonymize(const Dataset& d, std::size_t k,
                                            const AttributeSet& q,
                                            const AttributeStats& stats);

struct ClosenessParams {
  std::size_t k = 0;
  double t = 0.0;
  std::size_t n = 0;
  // max{k, ceil(n / (2(n-1)t + 1))}.
  std::size_t effective_cluster_size = 0;
};

// Largest closeness level reachable for cluster size k: (n-k) / (2(n-1)k).
double ClosenessUpperBound(std::size_t n, std::size_t k);

// Without `t`, t is set to its upper bound for k. A larger t than the bound
// is an error.
absl::StatusOr<ClosenessParams> ClosenessBounds(std::size_t n, std::size_t k,
                                                std::optional<double> t);

// Number of strata actually used for n records and requested cluster size
// `cluster_size`: when the n mod K leftover records outnumber the floor(n/K)
// clusters, K grows by floor((n mod K) / floor(n/K)) until they fit.
std::size_t StratifiedClusterSize(std::size_t n, std::size_t cluster_size);

// k-anonymity with t-closeness on one confidential attribute. Records are
// sorted by the confidential value and split into K strata of floor(n/K)
// consecutive records plus a remainder stratum; each stratum is sorted by
// distance to the all-zeros record, and cluster j takes the j-th record of
// every stratum. Every cluster holds K or K+1 records, at most one per
// stratum.
absl::StatusOr<ClusteredDataset> KAnonymizeTClose(
    const Dataset& d, std::size_t k, double t, std::size_t confidential,
    const AttributeSet& q, const AttributeStats& stats);

// Replaces each attribute of `q` by the [min; max] hull within each cluster.
Dataset GeneralizeClusters(const Dataset& d,
                           const std::vector<std::vector<std::size_t>>& clusters,
                           const AttributeSet& q);

}  // namespace anonkit

#endif  // ANONKIT_K_ANONYMITY_H_
