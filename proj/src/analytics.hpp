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

#include <optional>
#include <string>
#include <vector>

#include "exact.hpp"
#include "placement.hpp"

namespace hcb {

struct SubpacketizationReport {
  BigInt subfiles_hcb;  // D_T^t_T * D_R^t_R
  BigInt subfiles_nma;  // C(K_T, t_T) * C(K_R, t_R)
  BigInt delta_hcb;     // packets per subfile, hypercube scheme
  BigInt delta_nma;     // packets per subfile, NMA baseline
  BigInt f_hcb;
  BigInt f_nma;
  Rational gap;  // f_hcb / f_nma
  BigInt steps;
  BigInt packets_total;
  int dof = 0;
};

SubpacketizationReport subpacketization(const DerivedParams& p);

// Hypercube packets per demanded subfile:
// C(D_R-2, delta-1) * C(D_R-1, delta)^(t_R-1) * (delta!)^t_R / delta * (t_R-1)!
BigInt delta_hcb(int rx_dims, int rx_per_dim, int delta);
// NMA packets per subfile: C(K_R-t_R-1, t_T-1) * (t_T-1)! * t_R!
BigInt delta_nma(std::int64_t rx_count, int rx_dims, int tx_dims);

// Packets per file for the hypercube scheme at the given integer parameters.
BigInt hypercube_subpacketization(int tx_dims, int tx_per_dim, int rx_dims, int rx_per_dim);

struct GapBoundReport {
  Rational gap;
  std::vector<Rational> lambda;  // lambda_0 .. lambda_{t_R-1}
  Rational lambda_product;
  Rational nma_over_hcb;  // delta_nma / delta_hcb

  bool gap_at_most_one = false;
  bool gap_below_one = false;
  bool lambda_strictly_decreasing = false;
  bool lambda_last_at_least_one = false;
  bool lambda_product_matches = false;

  // Stirling-bound diagnostics, only for D_T == D_R.
  bool symmetric = false;
  double log_gap = 0.0;
  double compact_c0 = 0.0, compact_c1 = 0.0;
  double expanded_c0 = 0.0, expanded_c1 = 0.0, expanded_c2 = 0.0, expanded_c3 = 0.0,
         expanded_c4 = 0.0;
  std::optional<double> compact_bound;
  std::optional<double> expanded_bound;
  bool compact_bound_holds = false;
  bool expanded_bound_holds = false;
  bool expanded_applicable = false;  // t >= C_4
};

GapBoundReport gap_analysis(const DerivedParams& p);

struct SharePartition {
  Rational file_fraction;
  Rational tx_memory_fraction;
  Rational rx_memory_fraction;
  Rational tx_caching;  // t_T' (integer)
  Rational rx_caching;  // t_R' (integer)
  Rational delta;
  Rational dof;
  bool external_scheme = false;
  std::optional<BigInt> subpacketization;
  std::string note;
};

struct MemorySharePlan {
  enum class Kind { Direct, NonIntegerCaching, DeltaBelowOne, FractionalDelta };

  Kind kind = Kind::Direct;
  Rational tx_caching;
  Rational rx_caching;
  Rational weight = 1;  // file fraction of the first partition
  std::vector<SharePartition> partitions;
  Rational combined_dof;
  std::optional<BigInt> combined_subpacketization;

  std::string to_text() const;
};

const char* plan_kind_name(MemorySharePlan::Kind k) noexcept;

// Splits memories and files so each partition has integer caching parameters
// (and an integer delta where it can). Throws ValidationError when t_T < 1.
MemorySharePlan plan_memory_sharing(const NetworkConfig& cfg);
// Same, from caching parameters directly; K_T and K_R decide which partitions
// have an integral hypercube realization.
MemorySharePlan plan_memory_sharing(const Rational& tx_caching, const Rational& rx_caching,
                                    std::int64_t tx_count, std::int64_t rx_count);

struct CapResult {
  NetworkConfig config;
  bool changed = false;
  bool integral = false;
  std::optional<MemorySharePlan> plan;  // set when no integral reduction exists
  std::string note;
};

// When t_T + t_R > K_R, scales memories down so the sum-DoF is exactly K_R.
CapResult cap_excess_memory(const NetworkConfig& cfg);

// Symmetric sweep point: D_T = D_R = d, t_R = t, t_T = delta * t.
NetworkConfig symmetric_config(int d, int t, int delta);

struct GridSpec {
  std::vector<int> d;
  std::vector<int> t;
  std::vector<int> delta;
};

// "d=3,4;t=1:6;delta=1,2". Values are comma lists; a:b is an inclusive range.
// A missing key leaves that axis empty, which yields an empty grid.
GridSpec parse_grid_spec(const std::string& spec);
std::vector<NetworkConfig> expand_grid(const GridSpec& g);

struct SweepResult {
  std::string csv;
  std::size_t rows = 0;
  std::vector<std::string> skipped;
};

std::string sweep_csv_header();
SweepResult run_sweep(const std::vector<NetworkConfig>& configs);

std::string analysis_text(const DerivedParams& p, const SubpacketizationReport& s,
                          const GapBoundReport& g);

struct AnalyzeResult {
  enum class Route { Direct, MemorySharing, Capped };

  Route route = Route::Direct;
  std::vector<ViolationRecord> violations;  // empty for Direct
  std::string text;
  std::string csv;  // one sweep row for Direct, header only otherwise
};

const char* route_name(AnalyzeResult::Route r) noexcept;

// Full analysis of one configuration. Non-integer caching parameters or delta
// go to the memory-sharing planner, t_T + t_R > K_R goes to the memory cap.
// Anything else invalid throws ValidationError listing every violation.
AnalyzeResult analyze_network(const NetworkConfig& cfg);

}  // namespace hcb
