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

#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "exact.hpp"

namespace hcb {

// Sorted ascending, no duplicates. Unordered tuples are stored this way too.
using IndexSet = std::vector<int>;

// t disjoint groups ("dimensions") of D points each.
class DimensionPartition {
 public:
  // Group i = {u : floor(u / D) == i} over the labels 0 .. D*t-1.
  static DimensionPartition contiguous(int points_per_dim, int dim_count);

  // Arbitrary labels; groups must be non-empty, disjoint and equal-sized.
  static DimensionPartition from_groups(std::vector<IndexSet> groups);

  int points_per_dim() const noexcept { return points_per_dim_; }
  int dim_count() const noexcept { return static_cast<int>(groups_.size()); }
  std::size_t point_count() const noexcept {
    return static_cast<std::size_t>(points_per_dim_) * groups_.size();
  }
  const std::vector<IndexSet>& groups() const noexcept { return groups_; }

  // Sorted union of all groups.
  IndexSet points() const;

  // Index of the group holding `point`, or -1.
  int dimension_of(int point) const noexcept;

 private:
  DimensionPartition(int points_per_dim, std::vector<IndexSet> groups)
      : points_per_dim_(points_per_dim), groups_(std::move(groups)) {}

  int points_per_dim_;
  std::vector<IndexSet> groups_;
};

struct Permutation {
  std::vector<int> order;

  std::size_t size() const noexcept { return order.size(); }
  int operator[](std::size_t i) const { return order[i]; }
  // Wrap-around access: at(i) == order[i mod size].
  int at(std::ptrdiff_t i) const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;
};

// Left rotation: rotate(p, k)[0] == p[k].
Permutation rotate(const Permutation& p, std::ptrdiff_t shift);

// The rotation of `p` that starts with its smallest label.
Permutation canonical_rotation(const Permutation& p);

// {{a_0, ..., a_{m-1}} : a_i in sets[i]} for pairwise-disjoint inputs, each
// result sorted, the whole list in lexicographic order.
std::vector<IndexSet> unordered_product(std::span<const IndexSet> sets);

// All size-k subsets of `s` in lexicographic order.
std::vector<IndexSet> k_subsets(const IndexSet& s, int k);

bool is_hypercube_permutation(const Permutation& p, const DimensionPartition& part);

struct EnumerationLimits {
  std::size_t max_points = 12;
  std::size_t max_results = 5'000'000;
};

// Every hypercube permutation of `part`, lexicographically ordered.
std::vector<Permutation> enumerate_hypercube_permutations(
    const DimensionPartition& part, EnumerationLimits limits = {});

// One representative per rotation class: the rotation starting at the minimum
// label. Lexicographically ordered.
std::vector<Permutation> enumerate_circular_hypercube_permutations(
    const DimensionPartition& part, EnumerationLimits limits = {});

// (D!)^t * t!
BigInt hcb_count(int points_per_dim, int dim_count);
// (D!)^t * (t-1)! / D
BigInt circ_count(int points_per_dim, int dim_count);

}  // namespace hcb
