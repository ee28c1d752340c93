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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "analytics.hpp"
#include "combinatorics.hpp"
#include "oracle.hpp"
#include "phy.hpp"
#include "placement.hpp"
#include "scheduler.hpp"

using namespace hcb;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& title, Outcome o, double secs, double budget) {
  if (secs > budget) o.fail("runtime " + std::to_string(secs) + " s over the " +
                            std::to_string(budget) + " s budget");
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s  %s  (%.2f s)%s%s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(),
              secs, o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
}

NetworkConfig net(std::int64_t kt, std::int64_t kr, Rational mt, Rational mr, std::int64_t n) {
  NetworkConfig c;
  c.tx_count = kt;
  c.rx_count = kr;
  c.tx_memory = mt;
  c.rx_memory = mr;
  c.file_count = n;
  return c;
}

std::int64_t lcm(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

// Every valid config with D_T, D_R <= 4 and t_T + t_R <= 6.
std::vector<DerivedParams> config_grid() {
  std::vector<DerivedParams> out;
  for (int t_rx = 1; t_rx <= 5; ++t_rx)
    for (int delta = 1; t_rx * (delta + 1) <= 6; ++delta)
      for (int d_rx = delta + 1; d_rx <= 4; ++d_rx)
        for (int d_tx = 1; d_tx <= 4; ++d_tx) {
          const int t_tx = delta * t_rx;
          const std::int64_t n = lcm(d_tx, d_rx);
          const auto v = validate_config(
              net(t_tx * d_tx, t_rx * d_rx, Rational(n, d_tx), Rational(n, d_rx), n));
          if (v.ok()) out.push_back(v.params);
        }
  return out;
}

std::string label(const DerivedParams& p) {
  std::ostringstream os;
  os << "(t_T=" << p.tx_dims << ",t_R=" << p.rx_dims << ",D_T=" << p.tx_per_dim
     << ",D_R=" << p.rx_per_dim << ")";
  return os.str();
}

// Per-receiver need: subfiles of the demanded file missing from the cache,
// times packets per subfile.
BigInt need_per_receiver(const DerivedParams& p) {
  return ipow(BigInt(p.tx_per_dim), p.tx_dims) * (p.rx_per_dim - 1) *
         ipow(BigInt(p.rx_per_dim), p.rx_dims - 1) * delta_hcb(p.rx_dims, p.rx_per_dim, p.delta);
}

Outcome criterion1() {
  Outcome o;
  const auto p = derive_params(net(4, 4, 2, 2, 4));
  const auto dem = DemandVector::distinct(p);
  const auto s = build_schedule(dem, p);
  const auto sp = subpacketization(p);
  const auto cov = verify_exact_cover(s, dem, p);
  if (split_files(p).size() != 4 * 16) o.fail("subfiles per file != 16");
  if (sp.delta_hcb != 1) o.fail("Delta_HCB != 1");
  if (s.packet_count() != 32) o.fail("packets != 32");
  if (s.steps.size() != 8) o.fail("steps != 8");
  for (const auto& st : s.steps)
    if (st.packets.size() != 4) o.fail("a step does not carry 4 packets");
  if (Rational(BigInt(s.packet_count()), BigInt(s.steps.size())) != 4) o.fail("DoF != 4");
  if (!cov.passed) o.fail("coverage failed");
  o.detail = o.pass ? "16 subfiles/file, Delta_HCB=1, 32 packets, 8 steps x 4, DoF=4" : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  int cases = 0;
  for (int d = 1; d <= 8; ++d)
    for (int t = 1; d * t <= 8; ++t) {
      const auto part = DimensionPartition::contiguous(d, t);
      const auto all = enumerate_hypercube_permutations(part);
      const auto circ = enumerate_circular_hypercube_permutations(part);
      const BigInt want_all = ipow(factorial(d), t) * factorial(t);
      const BigInt want_circ = ipow(factorial(d), t) * factorial(t - 1) / d;
      if (BigInt(all.size()) != want_all || BigInt(circ.size()) != want_circ)
        o.fail("count mismatch at D=" + std::to_string(d) + " t=" + std::to_string(t));

      // Independent filter over all (D t)! orderings.
      std::vector<int> pts = part.points();
      std::size_t brute = 0;
      std::set<std::vector<int>> classes;
      do {
        if (!oracle::residue_rule(pts, t, d)) continue;
        ++brute;
        auto best = pts;
        for (std::size_t k = 1; k < pts.size(); ++k) {
          std::vector<int> r(pts.begin() + k, pts.end());
          r.insert(r.end(), pts.begin(), pts.begin() + k);
          best = std::min(best, r);
        }
        classes.insert(best);
      } while (std::next_permutation(pts.begin(), pts.end()));
      if (brute != all.size() || classes.size() != circ.size())
        o.fail("brute-force mismatch at D=" + std::to_string(d) + " t=" + std::to_string(t));
      ++cases;
    }
  const auto two = DimensionPartition::contiguous(2, 2);
  if (enumerate_hypercube_permutations(two).size() != 8 ||
      enumerate_circular_hypercube_permutations(two).size() != 2)
    o.fail("(2,2) case is not 8 / 2");
  if (o.pass) o.detail = std::to_string(cases) + " (D,t) pairs, (2,2): 8 and 2";
  return o;
}

Outcome criterion3(const std::vector<DerivedParams>& grid) {
  Outcome o;
  std::uint64_t demands = 0, packets = 0;
  for (const auto& p : grid) {
    const BigInt total = expected_total_packets(p);
    const BigInt per_rx = expected_packets_per_receiver(p);
    const BigInt need = need_per_receiver(p);
    if (per_rx != need) o.fail(label(p) + ": per-receiver packet count != need");
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto dem = DemandVector::uniform_random(p, 1000 * seed + 17);
      const auto s = build_schedule(dem, p);
      const auto cov = verify_exact_cover(s, dem, p);
      ++demands;
      packets += s.packet_count();
      if (!cov.passed) o.fail(label(p) + ": exact cover failed, seed " + std::to_string(seed));
      if (BigInt(s.packet_count()) != total) o.fail(label(p) + ": total packets mismatch");
      for (auto c : cov.delivered_per_receiver)
        if (BigInt(c) != per_rx) o.fail(label(p) + ": per-receiver count mismatch");
      // Full brute-force comparison where it is cheap.
      if (seed == 1 && total <= 3000 && s.packet_count() > 0) {
        std::vector<PacketId> got;
        for (const auto& st : s.steps) got.insert(got.end(), st.packets.begin(), st.packets.end());
        std::sort(got.begin(), got.end());
        if (got != oracle::demanded_packets(dem, p)) o.fail(label(p) + ": differs from oracle");
      }
    }
  }
  if (o.pass)
    o.detail = std::to_string(grid.size()) + " configs, " + std::to_string(demands) +
               " demands, " + std::to_string(packets) + " packets";
  return o;
}

Outcome criterion4(const std::vector<DerivedParams>& grid) {
  Outcome o;
  double worst_res = 0, worst_leak = 0, worst_cond = 0;
  std::uint64_t steps = 0;
  const Tolerances tol;  // defaults: residual 1e-9, condition 1e8
  for (const auto& p : grid) {
    const auto s = build_schedule(DemandVector::distinct(p), p);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      try {
        const auto rep = verify_schedule_decodable(s, sample_channel(p, seed), tol);
        steps += rep.steps;
        worst_res = std::max(worst_res, rep.worst_residual);
        worst_leak = std::max(worst_leak, rep.worst_zf_leak);
        worst_cond = std::max(worst_cond, rep.worst_condition);
        if (!rep.all_decoded || rep.worst_residual > 1e-9 || rep.worst_zf_leak > 1e-9)
          o.fail(label(p) + ": decoding failed, seed " + std::to_string(seed));
      } catch (const SolverError& e) {
        o.fail(label(p) + ": " + e.what());
      }
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%llu step simulations, worst residual %.2e, worst ZF leak %.2e, worst cond %.2e",
                static_cast<unsigned long long>(steps), worst_res, worst_leak, worst_cond);
  if (o.pass) o.detail = buf;
  return o;
}

Outcome criterion5(const std::vector<DerivedParams>& grid) {
  Outcome o;
  for (const auto& p : grid) {
    const auto s = build_schedule(DemandVector::distinct(p), p);
    const Rational dof(BigInt(s.packet_count()), BigInt(s.steps.size()));
    if (dof != p.tx_dims + p.rx_dims) o.fail(label(p) + ": DoF " + to_string(dof));
    if (Rational(expected_total_packets(p), expected_step_count(p)) != p.tx_dims + p.rx_dims)
      o.fail(label(p) + ": closed-form DoF mismatch");
  }
  if (o.pass) o.detail = std::to_string(grid.size()) + " configs, packets/steps = t_T + t_R";
  return o;
}

Outcome criterion6() {
  Outcome o;
  int points = 0, boundary = 0;
  for (int d = 2; d <= 6; ++d)
    for (int delta = 1; delta <= 3; ++delta)
      for (int t = 1; t <= 6; ++t) {
        const auto v = validate_config(symmetric_config(d, t, delta));
        if (!v.ok()) continue;
        ++points;
        const auto& p = v.params;
        const auto g = gap_analysis(p);
        const std::string at = "d=" + std::to_string(d) + " delta=" + std::to_string(delta) +
                               " t=" + std::to_string(t);
        if (g.gap > 1) o.fail(at + ": G > 1");
        if (p.tx_dims >= 2 && !(g.gap < 1)) o.fail(at + ": G not < 1");
        if (p.tx_dims == 1 && p.rx_dims == 1) {
          ++boundary;
          if (g.gap != 1) o.fail(at + ": boundary G != 1");
        }
        if (!g.lambda_strictly_decreasing) o.fail(at + ": lambda not strictly decreasing");
        if (!g.lambda_last_at_least_one) o.fail(at + ": lambda_last < 1");
        if (!g.lambda_product_matches) o.fail(at + ": Delta_NMA/Delta_HCB != prod lambda");
      }
  if (o.pass)
    o.detail = std::to_string(points) + " valid points, " + std::to_string(boundary) +
               " boundary points with G = 1";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto sweep = run_sweep(expand_grid(parse_grid_spec("d=3,4,5;t=1:8;delta=1,2")));
  // (d, delta, t) -> (t_T, log G), read back from the CSV.
  std::map<std::tuple<int, int, int>, std::pair<int, double>> pts;
  std::istringstream in(sweep.csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    const int t_tx = std::stoi(f[5]), t_rx = std::stoi(f[6]), delta = std::stoi(f[7]);
    const int d = std::stoi(f[9]);
    pts[{d, delta, t_rx}] = {t_tx, std::log(std::stod(f[14]))};
  }
  if (pts.size() != 48) o.fail("expected 48 sweep rows, got " + std::to_string(pts.size()));
  int pairs = 0;
  for (int d = 3; d <= 5; ++d) {
    for (int delta = 1; delta <= 2; ++delta)
      for (int t = 1; t < 8; ++t) {
        const auto& a = pts[{d, delta, t}];
        const auto& b = pts[{d, delta, t + 1}];
        if (a.first < 2) continue;
        ++pairs;
        if (!(b.second < a.second))
          o.fail("log G not decreasing at d=" + std::to_string(d) + " delta=" +
                 std::to_string(delta) + " t=" + std::to_string(t));
      }
    for (int t = 1; t < 8; ++t) {
      const double s1 = pts[{d, 1, t + 1}].second - pts[{d, 1, t}].second;
      const double s2 = pts[{d, 2, t + 1}].second - pts[{d, 2, t}].second;
      if (!(s2 < s1)) o.fail("delta=2 not steeper at d=" + std::to_string(d) + " t=" + std::to_string(t));
      if (!(pts[{d, 2, t + 1}].second < pts[{d, 1, t + 1}].second))
        o.fail("delta=2 not below delta=1 at d=" + std::to_string(d));
    }
  }
  if (o.pass) o.detail = "48 sweep rows, " + std::to_string(pairs) + " monotone steps, 21 slope comparisons";
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(20261019);
  std::uniform_int_distribution<int> pick_rx(2, 9), pick_tx(1, 30);
  int case1 = 0, case2 = 0;
  while (case1 + case2 < 20) {
    const int t_rx = pick_rx(rng), t_tx = pick_tx(rng);
    if (t_tx % t_rx == 0) continue;
    const bool below = t_tx < t_rx;
    if (below ? case1 >= 10 : case2 >= 10) continue;
    (below ? case1 : case2)++;
    const std::int64_t k_tx = 2 * static_cast<std::int64_t>(t_tx) * t_rx, k_rx = 4 * t_rx;
    const auto plan = plan_memory_sharing(t_tx, t_rx, k_tx, k_rx);
    const std::string at = "(t_T=" + std::to_string(t_tx) + ",t_R=" + std::to_string(t_rx) + ")";
    const auto want = below ? MemorySharePlan::Kind::DeltaBelowOne
                            : MemorySharePlan::Kind::FractionalDelta;
    if (plan.kind != want) o.fail(at + ": wrong case");
    Rational dof = 0, files = 0, tx = 0, rx = 0;
    for (const auto& pt : plan.partitions) {
      dof += pt.file_fraction * (pt.tx_caching + pt.rx_caching);
      files += pt.file_fraction;
      tx += pt.tx_memory_fraction;
      rx += pt.rx_memory_fraction;
      if (!pt.external_scheme && !is_integer(pt.delta)) o.fail(at + ": partition delta not integral");
    }
    if (dof != t_tx + t_rx || plan.combined_dof != t_tx + t_rx) o.fail(at + ": DoF " + to_string(dof));
    if (files != 1 || tx != 1 || rx != 1) o.fail(at + ": fractions do not sum to 1");
  }
  const auto ex = plan_memory_sharing(5, 2, 10, 8);
  if (ex.weight != Rational(1, 2) || ex.combined_dof != 7) o.fail("(5,2) example: p or DoF wrong");
  if (o.pass) o.detail = "10 Case-1 + 10 Case-2 pairs exact; (5,2): p=1/2, DoF=7";
  return o;
}

template <class F>
void run(int id, const std::string& title, double budget, F&& f) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  report(id, title, o, seconds_since(t0), budget);
}

}  // namespace

int main() {
  const auto grid = config_grid();
  run(1, "four-node example reproduction", 1.0, criterion1);
  run(2, "hypercube permutation counts", 10.0, criterion2);
  run(3, "exact-once cover and packet counts", 120.0, [&] { return criterion3(grid); });
  run(4, "noiseless one-shot decodability", 300.0, [&] { return criterion4(grid); });
  run(5, "sum-DoF by construction", 60.0, [&] { return criterion5(grid); });
  run(6, "subpacketization gap and lambda sequence", 10.0, criterion6);
  run(7, "gap sweep monotonicity", 10.0, criterion7);
  run(8, "memory-sharing planner", 10.0, criterion8);
  std::printf(
      "criterion 9: OUT OF SCOPE  converse and asymptotic scaling claims are cited results "
      "without a desk-scale experiment; covered by the property suites above\n");
  std::printf("acceptance: %s (%d failing)\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
