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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "analytics.hpp"
#include "error.hpp"

using namespace hcb;

namespace {

NetworkConfig net(std::int64_t kt, std::int64_t kr, Rational mt, Rational mr, std::int64_t n) {
  NetworkConfig c;
  c.tx_count = kt;
  c.rx_count = kr;
  c.tx_memory = mt;
  c.rx_memory = mr;
  c.file_count = n;
  return c;
}

std::vector<Rational> q(std::initializer_list<Rational> v) { return v; }

}  // namespace

TEST_CASE("subpacketization values frozen from an independent evaluation") {
  struct Row {
    NetworkConfig cfg;
    int dh, dn, fh, fn;
    Rational gap;
    std::vector<Rational> lambda;
  };
  const Row rows[] = {
      {net(4, 4, 2, 2, 4), 1, 2, 16, 72, Rational(2, 9), q({2, 1})},
      {net(2, 4, 2, 1, 4), 1, 1, 8, 8, Rational(1), q({1})},
      {net(6, 6, 1, 1, 3), 2, 6, 162, 1350, Rational(3, 25), q({2, Rational(3, 2)})},
      {net(8, 6, 3, 2, 6), 2, 12, 288, 12600, Rational(4, 175), q({6, 1})},
      {net(6, 6, 1, 1, 2), 2, 12, 128, 4800, Rational(2, 75), q({3, 2, 1})},
      {net(4, 8, 2, 1, 4), 3, 10, 192, 1680, Rational(4, 35), q({2, Rational(5, 3)})},
      {net(6, 4, 2, 1, 4), 2, 2, 64, 160, Rational(2, 5), q({1})},
  };
  for (const auto& r : rows) {
    CAPTURE(r.fh);
    const auto p = derive_params(r.cfg);
    const auto s = subpacketization(p);
    CHECK(s.delta_hcb == r.dh);
    CHECK(s.delta_nma == r.dn);
    CHECK(s.f_hcb == r.fh);
    CHECK(s.f_nma == r.fn);
    CHECK(s.gap == r.gap);
    CHECK(s.dof == p.tx_dims + p.rx_dims);
    CHECK(hypercube_subpacketization(p.tx_dims, p.tx_per_dim, p.rx_dims, p.rx_per_dim) == r.fh);
    const auto g = gap_analysis(p);
    CHECK(g.lambda == r.lambda);
    CHECK(g.lambda_product_matches);
    CHECK(g.gap_at_most_one);
  }
}

TEST_CASE("gap report flags") {
  const auto g = gap_analysis(derive_params(net(4, 4, 2, 2, 4)));
  CHECK(g.gap_below_one);
  CHECK(g.lambda_strictly_decreasing);
  CHECK(g.lambda_last_at_least_one);
  CHECK(g.symmetric);

  // t_T = t_R = 1: the two schemes coincide.
  const auto one = gap_analysis(derive_params(net(3, 3, 1, 1, 3)));
  CHECK(one.gap == 1);
  CHECK_FALSE(one.gap_below_one);

  const auto asym = gap_analysis(derive_params(net(2, 4, 2, 1, 4)));
  CHECK_FALSE(asym.symmetric);
  CHECK_FALSE(asym.compact_bound.has_value());
}

TEST_CASE("bounds match an independent evaluation of the closed form") {
  struct Row {
    int d, t, delta;
    double bound;
  };
  // Evaluated directly (not in the log domain) with Python floats.
  const Row rows[] = {
      {3, 2, 1, 0.923136649483897},
      {4, 3, 2, 0.0002793761156569391},
      {5, 2, 3, 0.0038949040722459634},
      {3, 1, 2, 11.749611326614064},
  };
  for (const auto& r : rows) {
    CAPTURE(r.d);
    CAPTURE(r.t);
    CAPTURE(r.delta);
    const auto g = gap_analysis(derive_params(symmetric_config(r.d, r.t, r.delta)));
    REQUIRE(g.compact_bound.has_value());
    CHECK(*g.compact_bound == doctest::Approx(r.bound).epsilon(1e-12));
    // Both forms reduce to the same constants.
    CHECK(*g.expanded_bound == doctest::Approx(*g.compact_bound).epsilon(1e-12));
    CHECK(g.expanded_c4 == doctest::Approx(g.compact_c1).epsilon(1e-12));
    CHECK(g.compact_bound_holds);
  }
}

TEST_CASE("memory sharing: non-integer caching parameters") {
  const auto plan = plan_memory_sharing(Rational(5, 2), Rational(4, 3), 10, 8);
  CHECK(plan.kind == MemorySharePlan::Kind::NonIntegerCaching);
  Rational files = 0, tx = 0, rx = 0;
  for (const auto& pt : plan.partitions) {
    CHECK(is_integer(pt.tx_caching));
    CHECK(is_integer(pt.rx_caching));
    files += pt.file_fraction;
    tx += pt.file_fraction * pt.tx_caching;
    rx += pt.file_fraction * pt.rx_caching;
  }
  CHECK(files == 1);
  CHECK(tx == Rational(5, 2));
  CHECK(rx == Rational(4, 3));
  CHECK(plan.combined_dof == Rational(5, 2) + Rational(4, 3));
}

TEST_CASE("memory sharing: fractional delta") {
  const auto plan = plan_memory_sharing(5, 2, 10, 8);
  CHECK(plan.kind == MemorySharePlan::Kind::FractionalDelta);
  CHECK(plan.weight == Rational(1, 2));
  CHECK(plan.combined_dof == 7);
  REQUIRE(plan.partitions.size() == 2);
  CHECK(plan.partitions[0].tx_caching == 4);
  CHECK(plan.partitions[1].tx_caching == 6);
  CHECK(plan.partitions[0].tx_memory_fraction + plan.partitions[1].tx_memory_fraction == 1);
  CHECK(plan.partitions[0].rx_memory_fraction + plan.partitions[1].rx_memory_fraction == 1);
}

TEST_CASE("memory sharing: delta below one") {
  const auto plan = plan_memory_sharing(2, 3, 6, 9);
  CHECK(plan.kind == MemorySharePlan::Kind::DeltaBelowOne);
  CHECK(plan.weight == Rational(1, 2));  // (3 - 2) / (3 - 1)
  REQUIRE(plan.partitions.size() == 2);
  CHECK(plan.partitions[0].external_scheme);
  CHECK(plan.partitions[0].tx_caching == 1);
  CHECK(plan.partitions[1].tx_caching == 3);
  CHECK(plan.partitions[1].delta == 1);
  // The delta = 1 partition (t_T = t_R = 3, K_T = 6, K_R = 9) is realizable.
  CHECK(plan.partitions[1].subpacketization.has_value());
  CHECK(plan.combined_dof == 5);
}

TEST_CASE("memory sharing: integral input is a single partition") {
  const auto plan = plan_memory_sharing(net(4, 4, 2, 2, 4));
  CHECK(plan.kind == MemorySharePlan::Kind::Direct);
  REQUIRE(plan.partitions.size() == 1);
  CHECK(plan.combined_subpacketization == BigInt(16));
  CHECK_THROWS_AS(plan_memory_sharing(Rational(1, 2), 1, 4, 4), ValidationError);
  CHECK(plan.to_text().find("memory_sharing: direct") != std::string::npos);
}

TEST_CASE("memory cap") {
  // t_T + t_R = 6 > K_R = 4: an integral reduction exists.
  const auto cap = cap_excess_memory(net(4, 4, 4, 2, 4));
  CHECK(cap.changed);
  CHECK(cap.integral);
  CHECK(cap.config.tx_memory == 2);
  CHECK(cap.config.rx_memory == 2);
  CHECK(validate_config(cap.config).ok());

  const auto same = cap_excess_memory(net(4, 4, 2, 2, 4));
  CHECK_FALSE(same.changed);

  // K_T = 3 leaves no integral hypercube point with t_T + t_R = K_R = 3.
  const auto frac = cap_excess_memory(net(3, 3, 3, 3, 3));
  CHECK(frac.changed);
  CHECK_FALSE(frac.integral);
  CHECK(frac.config.tx_caching() + frac.config.rx_caching() <= 3);
}

TEST_CASE("grid parsing") {
  const auto g = parse_grid_spec("d=3,4; t=1:3 ;delta=2");
  CHECK(g.d == std::vector<int>{3, 4});
  CHECK(g.t == std::vector<int>{1, 2, 3});
  CHECK(g.delta == std::vector<int>{2});
  CHECK(expand_grid(g).size() == 6);
  CHECK(parse_grid_spec("").d.empty());
  CHECK_THROWS_AS(parse_grid_spec("d=x"), ParseError);
  CHECK_THROWS_AS(parse_grid_spec("q=1"), ParseError);
  CHECK_THROWS_AS(parse_grid_spec("d"), ParseError);
}

TEST_CASE("sweep CSV") {
  const auto empty = run_sweep({});
  CHECK(empty.csv == sweep_csv_header());
  CHECK(empty.rows == 0);

  const auto r = run_sweep(expand_grid(parse_grid_spec("d=2,3;t=1:2;delta=1,2")));
  // d = 2 with delta = 2 violates D_R >= delta + 1.
  CHECK(r.rows == 6);
  CHECK(r.skipped.size() == 2);
  std::istringstream lines(r.csv);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header ==
        "K_T,K_R,M_T,M_R,N,t_T,t_R,delta,D_T,D_R,delta_hcb,delta_nma,f_hcb,f_nma,G,steps,dof,"
        "lambda_min,bound_compact,bound_expanded");
  CHECK(first.rfind("2,2,1,1,2,1,1,1,2,2,1,1,4,4,1,2,2,1,", 0) == 0);

  // Non-symmetric configs leave the bound columns empty.
  const auto asym = run_sweep({net(2, 4, 2, 1, 4)});
  CHECK(asym.csv.substr(asym.csv.size() - 3) == ",,\n");
}

TEST_CASE("analyze routing") {
  const auto direct = analyze_network(net(4, 4, 2, 2, 4));
  CHECK(direct.route == AnalyzeResult::Route::Direct);
  CHECK(direct.text.find("F_HCB=16\n") != std::string::npos);
  CHECK(direct.text.find("F_NMA=72\n") != std::string::npos);
  CHECK(direct.text.find("G=2/9") != std::string::npos);
  CHECK(direct.text.find("DoF=4\n") != std::string::npos);

  const auto shared = analyze_network(net(10, 8, 2, 1, 4));
  CHECK(shared.route == AnalyzeResult::Route::MemorySharing);
  CHECK(shared.text.find("combined_dof: 7") != std::string::npos);

  const auto capped = analyze_network(net(4, 4, 4, 2, 4));
  CHECK(capped.route == AnalyzeResult::Route::Capped);

  CHECK_THROWS_AS(analyze_network(net(2, 4, 1, 1, 4)), ValidationError);  // library not covered
  CHECK_THROWS_AS(analyze_network(net(6, 6, 2, 1, 3)), ValidationError);  // D_T = 3/2
  CHECK(analyze_network(net(4, 2, 2, 2, 4)).route == AnalyzeResult::Route::Capped);
}
