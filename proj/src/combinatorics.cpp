/*
 * Copyright 2026 The hcbcache Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "error.hpp"

namespace hcb {

DimensionPartition DimensionPartition::contiguous(int points_per_dim, int dim_count) {
  if (points_per_dim < 1 || dim_count < 1)
    throw InvalidInput("partition needs D >= 1 and t >= 1");
  std::vector<IndexSet> groups(static_cast<std::size_t>(dim_count));
  for (int i = 0; i < dim_count; ++i) {
    groups[i].resize(static_cast<std::size_t>(points_per_dim));
    std::iota(groups[i].begin(), groups[i].end(), i * points_per_dim);
  }
  return DimensionPartition(points_per_dim, std::move(groups));
}

DimensionPartition DimensionPartition::from_groups(std::vector<IndexSet> groups) {
  if (groups.empty() || groups.front().empty())
    throw InvalidInput("partition needs at least one non-empty group");
  const std::size_t size = groups.front().size();
  IndexSet all;
  for (auto& g : groups) {
    if (g.size() != size) throw InvalidInput("partition groups differ in size");
    std::sort(g.begin(), g.end());
    if (std::adjacent_find(g.begin(), g.end()) != g.end())
      throw InvalidInput("partition group repeats a point");
    all.insert(all.end(), g.begin(), g.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw InvalidInput("partition groups overlap");
  return DimensionPartition(static_cast<int>(size), std::move(groups));
}

IndexSet DimensionPartition::points() const {
  IndexSet all;
  all.reserve(point_count());
  for (const auto& g : groups_) all.insert(all.end(), g.begin(), g.end());
  std::sort(all.begin(), all.end());
  return all;
}

int DimensionPartition::dimension_of(int point) const noexcept {
  for (std::size_t i = 0; i < groups_.size(); ++i)
    if (std::binary_search(groups_[i].begin(), groups_[i].end(), point))
      return static_cast<int>(i);
  return -1;
}

int Permutation::at(std::ptrdiff_t i) const {
  const auto n = static_cast<std::ptrdiff_t>(order.size());
  return order[static_cast<std::size_t>(((i % n) + n) % n)];
}

Permutation rotate(const Permutation& p, std::ptrdiff_t shift) {
  Permutation r;
  r.order.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r.order.push_back(p.at(shift + static_cast<std::ptrdiff_t>(i)));
  return r;
}

Permutation canonical_rotation(const Permutation& p) {
  if (p.order.empty()) return p;
  auto it = std::min_element(p.order.begin(), p.order.end());
  return rotate(p, it - p.order.begin());
}

std::vector<IndexSet> unordered_product(std::span<const IndexSet> sets) {
  IndexSet seen;
  for (const auto& s : sets) {
    if (s.empty()) return {};
    seen.insert(seen.end(), s.begin(), s.end());
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw InvalidInput("unordered_product: input sets overlap");

  std::vector<IndexSet> out;
  if (sets.empty()) return out;
  std::vector<std::size_t> idx(sets.size(), 0);
  for (;;) {
    IndexSet e;
    e.reserve(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) e.push_back(sets[i][idx[i]]);
    std::sort(e.begin(), e.end());
    out.push_back(std::move(e));
    std::size_t k = sets.size();
    while (k > 0) {
      --k;
      if (++idx[k] < sets[k].size()) break;
      idx[k] = 0;
      if (k == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
    }
  }
}

std::vector<IndexSet> k_subsets(const IndexSet& s, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > s.size())
    throw InvalidInput("k_subsets: need 1 <= k <= |S|, got k=" + std::to_string(k) +
                       ", |S|=" + std::to_string(s.size()));
  IndexSet sorted = s;
  std::sort(sorted.begin(), sorted.end());
  std::vector<IndexSet> out;
  const std::size_t n = sorted.size();
  std::vector<std::size_t> pick(static_cast<std::size_t>(k));
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    IndexSet e;
    e.reserve(pick.size());
    for (auto i : pick) e.push_back(sorted[i]);
    out.push_back(std::move(e));
    std::size_t i = pick.size();
    while (i > 0 && pick[i - 1] == n - pick.size() + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

bool is_hypercube_permutation(const Permutation& p, const DimensionPartition& part) {
  IndexSet sorted = p.order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != part.points())
    throw InvalidInput("permutation does not cover the partition's points");
  const std::size_t t = static_cast<std::size_t>(part.dim_count());
  std::vector<int> residue_owner(t, -1);
  for (std::size_t pos = 0; pos < p.size(); ++pos) {
    const int dim = part.dimension_of(p[pos]);
    int& owner = residue_owner[pos % t];
    if (owner == -1)
      owner = dim;
    else if (owner != dim)
      return false;
  }
  return true;
}

namespace {

std::vector<std::vector<int>> all_orderings(const IndexSet& g) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(g.begin(), g.end());
  std::sort(cur.begin(), cur.end());
  do out.push_back(cur);
  while (std::next_permutation(cur.begin(), cur.end()));
  return out;
}

void check_limits(const DimensionPartition& part, const BigInt& count,
                  const EnumerationLimits& limits) {
  if (part.point_count() > limits.max_points)
    throw ResourceLimit("permutation enumeration over " +
                        std::to_string(part.point_count()) +
                        " points exceeds the cap of " +
                        std::to_string(limits.max_points));
  if (count > limits.max_results)
    throw ResourceLimit("permutation enumeration would produce " + count.str() +
                        " results, cap is " + std::to_string(limits.max_results));
}

// Residue classes mod t each host one dimension; within a class the D points
// can appear in any order. With `circular`, the dimension holding the minimum
// label is pinned to residue 0 with that label first.
std::vector<Permutation> build(const DimensionPartition& part, bool circular) {
  const int t = part.dim_count();
  const int d = part.points_per_dim();
  const auto& groups = part.groups();
  const int min_label = part.points().front();
  const int min_dim = part.dimension_of(min_label);

  std::vector<std::vector<std::vector<int>>> orderings;
  for (int g = 0; g < t; ++g) {
    auto all = all_orderings(groups[g]);
    if (circular && g == min_dim)
      std::erase_if(all, [&](const auto& o) { return o.front() != min_label; });
    orderings.push_back(std::move(all));
  }

  std::vector<Permutation> out;
  std::vector<int> residue_of(static_cast<std::size_t>(t));
  std::iota(residue_of.begin(), residue_of.end(), 0);
  do {
    if (circular && residue_of[min_dim] != 0) continue;
    std::vector<std::size_t> pick(static_cast<std::size_t>(t), 0);
    bool more = true;
    while (more) {
      Permutation p;
      p.order.assign(static_cast<std::size_t>(d * t), 0);
      for (int g = 0; g < t; ++g) {
        const auto& o = orderings[g][pick[g]];
        for (int m = 0; m < d; ++m) p.order[residue_of[g] + m * t] = o[m];
      }
      out.push_back(std::move(p));
      more = false;
      for (int k = t - 1; k >= 0 && !more; --k) {
        if (++pick[k] < orderings[k].size())
          more = true;
        else
          pick[k] = 0;
      }
    }
  } while (std::next_permutation(residue_of.begin(), residue_of.end()));

  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Permutation> enumerate_hypercube_permutations(const DimensionPartition& part,
                                                          EnumerationLimits limits) {
  check_limits(part, hcb_count(part.points_per_dim(), part.dim_count()), limits);
  return build(part, false);
}

std::vector<Permutation> enumerate_circular_hypercube_permutations(
    const DimensionPartition& part, EnumerationLimits limits) {
  check_limits(part, circ_count(part.points_per_dim(), part.dim_count()), limits);
  return build(part, true);
}

BigInt hcb_count(int points_per_dim, int dim_count) {
  if (points_per_dim < 1 || dim_count < 1) throw InvalidInput("hcb_count needs D, t >= 1");
  return ipow(factorial(points_per_dim), dim_count) * factorial(dim_count);
}

BigInt circ_count(int points_per_dim, int dim_count) {
  if (points_per_dim < 1 || dim_count < 1) throw InvalidInput("circ_count needs D, t >= 1");
  return ipow(factorial(points_per_dim), dim_count) * factorial(dim_count - 1) /
         points_per_dim;
}

}  // namespace hcb
