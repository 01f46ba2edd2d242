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

#include "anonkit/uniqueness.h"

#include <algorithm>
#include <bit>
#include <limits>

#include "absl/strings/str_cat.h"

namespace anonkit {
namespace {

// A record's cells over q as a box of closed integer ranges.
struct Box {
  std::vector<int64_t> lo;
  std::vector<int64_t> hi;
};

Box BoxOf(const Dataset& d, std::size_t record, const AttributeSet& q) {
  Box b;
  b.lo.reserve(q.size());
  b.hi.reserve(q.size());
  for (std::size_t a : q) {
    b.lo.push_back(d.cell(record, a).lo());
    b.hi.push_back(d.cell(record, a).hi());
  }
  return b;
}

bool Intersects(const Dataset& d, std::size_t other, const AttributeSet& q,
                const Box& box) {
  for (std::size_t k = 0; k < q.size(); ++k) {
    const Cell& c = d.cell(other, q[k]);
    if (c.hi() < box.lo[k] || c.lo() > box.hi[k]) return false;
  }
  return true;
}

// Candidate boxes clipped to the query box, stored flat (candidate-major).
struct Clipped {
  std::size_t dims = 0;
  std::vector<int64_t> lo;
  std::vector<int64_t> hi;
  std::size_t size() const { return dims == 0 ? 0 : lo.size() / dims; }

  void Add(const Dataset& d, std::size_t other, const AttributeSet& q,
           const Box& box) {
    for (std::size_t k = 0; k < q.size(); ++k) {
      const Cell& c = d.cell(other, q[k]);
      lo.push_back(std::max(c.lo(), box.lo[k]));
      hi.push_back(std::min(c.hi(), box.hi[k]));
    }
  }
};

// Depth-first walk over the grid of elementary regions. `alive` holds the
// candidates covering every segment chosen so far; an empty set means the
// current region (and thus a realization) is fitted by nobody. A candidate
// whose range spans the whole box on every remaining dimension closes the
// subtree.
struct Walk {
  const Clipped* c;
  const std::vector<std::vector<int64_t>>* cuts;
  std::vector<std::size_t> full_from;
  uint64_t budget;
  bool exhausted = false;

  bool FindUncovered(std::size_t depth, const std::vector<uint32_t>& alive) {
    if (depth == cuts->size()) return false;
    for (uint32_t cand : alive) {
      if (full_from[cand] <= depth) return false;
    }
    const std::vector<int64_t>& dim_cuts = (*cuts)[depth];
    std::vector<uint32_t> next;
    next.reserve(alive.size());
    for (std::size_t s = 0; s + 1 < dim_cuts.size(); ++s) {
      if (budget == 0) {
        exhausted = true;
        return false;
      }
      --budget;
      const int64_t seg_lo = dim_cuts[s];
      const int64_t seg_hi = dim_cuts[s + 1] - 1;
      next.clear();
      for (uint32_t cand : alive) {
        const std::size_t off = cand * c->dims + depth;
        if (c->lo[off] <= seg_lo && c->hi[off] >= seg_hi) next.push_back(cand);
      }
      if (next.empty()) return true;
      if (FindUncovered(depth + 1, next)) return true;
      if (exhausted) return false;
    }
    return false;
  }
};

absl::StatusOr<bool> HasUncoveredRealization(const Box& box, const Clipped& c,
                                             uint64_t cap,
                                             std::size_t original_index) {
  const std::size_t m = box.lo.size();
  const std::size_t n = c.size();
  if (n == 0) return true;
  Walk walk;
  walk.c = &c;
  walk.full_from.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t from = m;
    while (from > 0 && c.lo[i * m + from - 1] == box.lo[from - 1] &&
           c.hi[i * m + from - 1] == box.hi[from - 1]) {
      --from;
    }
    if (from == 0) return false;
    walk.full_from[i] = from;
  }

  // Cut points per dimension: each segment [cuts[s], cuts[s+1]) is either
  // inside or outside every candidate's range.
  std::vector<std::vector<int64_t>> cuts(m);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<int64_t>& v = cuts[k];
    v.reserve(2 * n + 2);
    v.push_back(box.lo[k]);
    v.push_back(box.hi[k] + 1);
    for (std::size_t i = 0; i < n; ++i) {
      if (c.lo[i * m + k] > box.lo[k]) v.push_back(c.lo[i * m + k]);
      if (c.hi[i * m + k] < box.hi[k]) v.push_back(c.hi[i * m + k] + 1);
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  walk.cuts = &cuts;
  walk.budget = cap;
  std::vector<uint32_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<uint32_t>(i);
  const bool found = walk.FindUncovered(0, all);
  if (walk.exhausted) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "record ", original_index,
        ": worst-case search visited more than the cap of ", cap,
        " regions"));
  }
  return found;
}

}  // namespace

bool Fits(const RecordView& candidate, std::span<const int64_t> realization,
          const AttributeSet& q) {
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (!candidate[q[k]].Covers(realization[k])) return false;
  }
  return true;
}

absl::StatusOr<bool> IsUniqueWorstCase(const Dataset& d, std::size_t record,
                                       const AttributeSet& q,
                                       const UniquenessOptions& options) {
  if (record >= d.num_records()) {
    return absl::OutOfRangeError(
        absl::StrCat("record ", record, " out of range"));
  }
  const Box box = BoxOf(d, record, q);
  Clipped clipped;
  clipped.dims = q.size();
  for (std::size_t s = 0; s < d.num_records(); ++s) {
    if (s != record && Intersects(d, s, q, box)) clipped.Add(d, s, q, box);
  }
  return HasUncoveredRealization(box, clipped, options.realization_cap,
                                 d.original_index(record));
}

// Per attribute, records bucketed by the bit length of their range width;
// within a bucket, sorted by lower bound. A range query then touches only
// entries whose lower bound can reach the query.
class WorstCaseUniqueness::IntervalIndex {
 public:
  IntervalIndex(const Dataset& d, const AttributeSet& q,
                const std::vector<uint32_t>& records)
      : d_(&d), q_(&q), per_attr_(q.size()) {
    for (std::size_t k = 0; k < q.size(); ++k) {
      std::vector<Bucket>& buckets = per_attr_[k];
      for (uint32_t r : records) {
        const Cell& c = d.cell(r, q[k]);
        const uint64_t width = c.realization_count();
        const std::size_t b = std::bit_width(width);
        if (buckets.size() <= b) buckets.resize(b + 1);
        buckets[b].entries.push_back({c.lo(), r});
        buckets[b].max_width = std::max(buckets[b].max_width, width);
      }
      for (Bucket& bucket : buckets) {
        std::sort(bucket.entries.begin(), bucket.entries.end());
      }
    }
  }

  // Appends to `out` every indexed record other than `self` whose box
  // intersects `box`, clipped to it.
  void Query(const Box& box, std::size_t self, Clipped* out) const {
    std::size_t best = 0;
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    for (std::size_t k = 0; k < per_attr_.size(); ++k) {
      std::size_t count = 0;
      for (const Bucket& bucket : per_attr_[k]) {
        auto [first, last] = Range(bucket, box.lo[k], box.hi[k]);
        count += static_cast<std::size_t>(last - first);
      }
      if (count < best_count) {
        best_count = count;
        best = k;
      }
      if (count == 0) return;
    }
    std::vector<uint32_t> hits;
    for (const Bucket& bucket : per_attr_[best]) {
      auto [first, last] = Range(bucket, box.lo[best], box.hi[best]);
      for (auto it = first; it != last; ++it) {
        if (it->record != self && Intersects(*d_, it->record, *q_, box)) {
          hits.push_back(it->record);
        }
      }
    }
    std::sort(hits.begin(), hits.end());
    for (uint32_t r : hits) out->Add(*d_, r, *q_, box);
  }

 private:
  struct Entry {
    int64_t lo;
    uint32_t record;
    friend auto operator<=>(const Entry&, const Entry&) = default;
  };
  struct Bucket {
    std::vector<Entry> entries;
    uint64_t max_width = 0;
  };
  using Iter = std::vector<Entry>::const_iterator;

  static std::pair<Iter, Iter> Range(const Bucket& bucket, int64_t qlo,
                                     int64_t qhi) {
    if (bucket.entries.empty()) return {bucket.entries.end(), bucket.entries.end()};
    // lo + width - 1 >= qlo  <=>  lo >= qlo - width + 1.
    const int64_t reach = static_cast<int64_t>(bucket.max_width) - 1;
    const int64_t min_lo =
        qlo < std::numeric_limits<int64_t>::min() + reach ? std::numeric_limits<int64_t>::min()
                                                          : qlo - reach;
    auto first = std::lower_bound(
        bucket.entries.begin(), bucket.entries.end(), Entry{min_lo, 0});
    auto last = std::upper_bound(
        first, bucket.entries.end(),
        Entry{qhi, std::numeric_limits<uint32_t>::max()});
    return {first, last};
  }

  const Dataset* d_;
  const AttributeSet* q_;
  std::vector<std::vector<Bucket>> per_attr_;
};

WorstCaseUniqueness::WorstCaseUniqueness(const Dataset& d, AttributeSet q,
                                         UniquenessOptions options)
    : d_(&d), q_(std::move(q)), options_(options),
      partition_(PartitionByCells(d, q_)) {
  const std::size_t n = d.num_records();
  generalized_.assign(n, false);
  std::vector<uint32_t> generalized_records;
  bool point_singleton = false;
  bool general_singleton = false;
  for (std::size_t i = 0; i < n; ++i) {
    bool g = false;
    for (std::size_t a : q_) {
      if (!d.cell(i, a).is_point()) {
        g = true;
        break;
      }
    }
    generalized_[i] = g;
    if (g) generalized_records.push_back(static_cast<uint32_t>(i));
    if (partition_.class_sizes[partition_.class_of[i]] == 1) {
      (g ? general_singleton : point_singleton) = true;
    }
  }
  // Point singletons can only be fitted by generalized records: a point
  // record covering them would share their exact tuple.
  if (point_singleton && !generalized_records.empty()) {
    generalized_index_ =
        std::make_shared<IntervalIndex>(d, q_, generalized_records);
  }
  if (general_singleton) {
    std::vector<uint32_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<uint32_t>(i);
    all_index_ = std::make_shared<IntervalIndex>(d, q_, all);
  }
}

absl::StatusOr<bool> WorstCaseUniqueness::IsUnique(std::size_t record) const {
  if (record >= d_->num_records()) {
    return absl::OutOfRangeError(
        absl::StrCat("record ", record, " out of range"));
  }
  if (partition_.class_sizes[partition_.class_of[record]] > 1) return false;
  const Box box = BoxOf(*d_, record, q_);
  Clipped clipped;
  clipped.dims = q_.size();
  if (!generalized_[record]) {
    if (generalized_index_ == nullptr) return true;
    generalized_index_->Query(box, record, &clipped);
    return clipped.size() == 0;
  }
  all_index_->Query(box, record, &clipped);
  return HasUncoveredRealization(box, clipped, options_.realization_cap,
                                 d_->original_index(record));
}

absl::StatusOr<std::vector<std::size_t>> WorstCaseUniqueness::UniqueRecords()
    const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d_->num_records(); ++i) {
    if (partition_.class_sizes[partition_.class_of[i]] > 1) continue;
    absl::StatusOr<bool> u = IsUnique(i);
    if (!u.ok()) return u.status();
    if (*u) out.push_back(i);
  }
  return out;
}

}  // namespace anonkit
