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

#include "anonkit/equivalence.h"

#include <algorithm>
#include <numeric>

namespace anonkit {

std::size_t ClassPartition::min_class_size() const {
  if (class_sizes.empty()) return 0;
  return *std::min_element(class_sizes.begin(), class_sizes.end());
}

double ClassPartition::mean_class_size() const {
  if (class_sizes.empty()) return 0.0;
  return static_cast<double>(class_of.size()) /
         static_cast<double>(class_sizes.size());
}

std::map<std::size_t, std::size_t> ClassPartition::SizeHistogram() const {
  std::map<std::size_t, std::size_t> h;
  for (uint32_t s : class_sizes) ++h[s];
  return h;
}

ClassPartition PartitionByCells(const Dataset& d, const AttributeSet& q) {
  const std::size_t n = d.num_records();
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  auto less = [&](uint32_t x, uint32_t y) {
    for (std::size_t a : q) {
      const Cell& cx = d.cell(x, a);
      const Cell& cy = d.cell(y, a);
      if (cx != cy) return cx < cy;
    }
    return x < y;
  };
  std::sort(order.begin(), order.end(), less);

  auto same = [&](uint32_t x, uint32_t y) {
    for (std::size_t a : q) {
      if (d.cell(x, a) != d.cell(y, a)) return false;
    }
    return true;
  };

  // Group runs; the first element of each run is its smallest member.
  std::vector<std::pair<uint32_t, uint32_t>> runs;  // (first member, start)
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || !same(order[i - 1], order[i])) {
      runs.emplace_back(order[i], static_cast<uint32_t>(i));
    }
  }
  std::vector<uint32_t> run_end(runs.size());
  for (std::size_t r = 0; r < runs.size(); ++r) {
    run_end[r] = r + 1 < runs.size() ? runs[r + 1].second
                                     : static_cast<uint32_t>(n);
  }
  std::vector<uint32_t> by_first(runs.size());
  std::iota(by_first.begin(), by_first.end(), 0u);
  std::sort(by_first.begin(), by_first.end(), [&](uint32_t a, uint32_t b) {
    return runs[a].first < runs[b].first;
  });

  ClassPartition p;
  p.class_of.assign(n, 0);
  p.class_sizes.resize(runs.size());
  p.first_member.resize(runs.size());
  for (std::size_t c = 0; c < by_first.size(); ++c) {
    const uint32_t r = by_first[c];
    p.first_member[c] = runs[r].first;
    p.class_sizes[c] = run_end[r] - runs[r].second;
    for (uint32_t i = runs[r].second; i < run_end[r]; ++i) {
      p.class_of[order[i]] = static_cast<uint32_t>(c);
    }
  }
  return p;
}

std::vector<EquivalenceClass> ExtractEquivalenceClasses(const Dataset& d,
                                                        const AttributeSet& q) {
  ClassPartition p = PartitionByCells(d, q);
  std::vector<EquivalenceClass> classes(p.num_classes());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (std::size_t a : q) {
      classes[c].qi_tuple.push_back(d.cell(p.first_member[c], a));
    }
    classes[c].member_indices.reserve(p.class_sizes[c]);
  }
  for (std::size_t i = 0; i < d.num_records(); ++i) {
    classes[p.class_of[i]].member_indices.push_back(i);
  }
  return classes;
}

}  // namespace anonkit
