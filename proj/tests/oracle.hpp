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

// Brute-force reference constructions shared by the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <vector>

#include "combinatorics.hpp"
#include "placement.hpp"
#include "scheduler.hpp"

namespace hcb::oracle {

inline bool residue_rule(const std::vector<int>& perm, int t, int points_per_dim) {
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (a % t == b % t && perm[a] / points_per_dim != perm[b] / points_per_dim) return false;
  return true;
}

// Packets of `subfile` for receiver `rx`, straight from the definition: every
// hypercube ordering pi of a receiver family that starts at rx and whose next
// t_R entries are exactly the subfile's receiver set.
inline std::vector<PacketId> subfile_packets(int rx, const SubfileId& subfile,
                                             const DerivedParams& p) {
  const int t = p.rx_dims, d = p.rx_per_dim, w = p.delta + 1;
  std::vector<std::vector<IndexSet>> choices;
  for (int g = 0; g < t; ++g) {
    IndexSet group;
    for (int k = 0; k < d; ++k) group.push_back(g * d + k);
    choices.push_back(k_subsets(group, w));
  }
  std::vector<PacketId> out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(t), 0);
  for (;;) {
    std::vector<int> pts;
    for (int g = 0; g < t; ++g) {
      const auto& s = choices[g][pick[g]];
      pts.insert(pts.end(), s.begin(), s.end());
    }
    std::sort(pts.begin(), pts.end());
    do {
      if (pts[0] != rx || !residue_rule(pts, t, d)) continue;
      std::vector<int> dot(pts.begin() + 1, pts.begin() + 1 + t);
      std::vector<int> sorted_dot = dot;
      std::sort(sorted_dot.begin(), sorted_dot.end());
      if (sorted_dot != subfile.rx_set) continue;
      out.push_back({subfile, dot, std::vector<int>(pts.begin() + 1 + t, pts.end()), rx});
    } while (std::next_permutation(pts.begin(), pts.end()));

    int k = t - 1;
    while (k >= 0 && ++pick[k] == choices[k].size()) pick[k--] = 0;
    if (k < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every packet the demand requires, sorted.
inline std::vector<PacketId> demanded_packets(const DemandVector& dem, const DerivedParams& p) {
  std::vector<PacketId> out;
  for (int j = 0; j < p.rx_count(); ++j)
    for (const auto& s : split_files(p)) {
      if (s.file != dem.files[j] || std::binary_search(s.rx_set.begin(), s.rx_set.end(), j))
        continue;
      auto pk = subfile_packets(j, s, p);
      out.insert(out.end(), pk.begin(), pk.end());
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hcb::oracle
