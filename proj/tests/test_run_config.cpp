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

#include "error.hpp"
#include "run_config.hpp"

using namespace hcb;

TEST_CASE("full config") {
  const auto rc = parse_run_config(R"({
    "network": {"K_T": 4, "K_R": 4, "M_T": 2, "M_R": "3/2", "N": 4},
    "demand": [3, 2, 1, 0],
    "channel": {"seed": 9, "retries": 0, "model": "rank-one"},
    "symbol_seed": 5,
    "noise_variance": 0.25,
    "tolerances": {"residual": 1e-6, "condition": 1e6},
    "output": {"dir": "results"},
    "sweep": {"d": [3, 4], "t": "1:3", "delta": 2,
              "configs": [{"K_T": 4, "K_R": 4, "M_T": 0.5, "M_R": 2, "N": 4}]}
  })");
  REQUIRE(rc.network);
  CHECK(rc.network->rx_memory == Rational(3, 2));
  CHECK(rc.demand.kind == DemandSpec::Kind::Explicit);
  CHECK(rc.demand.files == std::vector<int>{3, 2, 1, 0});
  CHECK(rc.channel.seed == 9);
  CHECK(rc.channel.retries == 0);
  CHECK(rc.channel.model == ChannelModel::RankOne);
  CHECK(rc.symbol_seed == 5);
  CHECK(rc.noise_variance == 0.25);
  CHECK(rc.tolerances.residual == 1e-6);
  CHECK(rc.tolerances.max_condition == 1e6);
  CHECK(rc.output_dir == "results");
  REQUIRE(rc.sweep_grid);
  CHECK(rc.sweep_grid->t == std::vector<int>{1, 2, 3});
  CHECK(rc.sweep_grid->delta == std::vector<int>{2});
  REQUIRE(rc.sweep_configs.size() == 1);
  CHECK(rc.sweep_configs[0].tx_memory == Rational(1, 2));
}

TEST_CASE("defaults") {
  const auto rc = parse_run_config(R"({"network": {"K_T": 4, "K_R": 4, "M_T": 2, "M_R": 2, "N": 4}})");
  CHECK(rc.demand.kind == DemandSpec::Kind::Distinct);
  CHECK(rc.channel.seed == 1);
  CHECK(rc.channel.retries == 3);
  CHECK(rc.noise_variance == 0.0);
  CHECK(rc.tolerances.residual == 1e-9);
  CHECK(rc.output_dir == "out");
  const auto p = derive_params(*rc.network);
  CHECK(rc.demand.resolve(p).files == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("demand forms") {
  const std::string net = R"("network": {"K_T": 4, "K_R": 4, "M_T": 2, "M_R": 2, "N": 4})";
  const auto rnd = parse_run_config("{" + net + R"(, "demand": {"uniform_random": 12}})");
  CHECK(rnd.demand.kind == DemandSpec::Kind::UniformRandom);
  const auto p = derive_params(*rnd.network);
  CHECK(rnd.demand.resolve(p).files == DemandVector::uniform_random(p, 12).files);

  const auto bad_len = parse_run_config("{" + net + R"(, "demand": [0, 1]})");
  CHECK_THROWS_AS(bad_len.demand.resolve(p), InvalidInput);
  const auto bad_file = parse_run_config("{" + net + R"(, "demand": [0, 1, 2, 4]})");
  CHECK_THROWS_AS(bad_file.demand.resolve(p), InvalidInput);
  CHECK_THROWS_AS(parse_run_config("{" + net + R"(, "demand": "everyone"})"), ParseError);
}

TEST_CASE("malformed configs") {
  CHECK_THROWS_AS(parse_run_config("{"), ParseError);
  CHECK_THROWS_AS(parse_run_config("[]"), ParseError);
  CHECK_THROWS_AS(parse_run_config(R"({"network": {"K_T": 4, "K_R": 4, "M_T": 2, "N": 4}})"),
                  ParseError);
  CHECK_THROWS_AS(parse_run_config(R"({"network": {"K_T": "4", "K_R": 4, "M_T": 2, "M_R": 2, "N": 4}})"),
                  ParseError);
  CHECK_THROWS_AS(parse_run_config(R"({"noise_variance": -1})"), ParseError);
  CHECK_THROWS_AS(parse_run_config(R"({"channel": {"model": "rayleigh"}})"), ParseError);
  CHECK_THROWS_AS(parse_run_config(R"({"channel": {"seed": -3}})"), ParseError);
  CHECK_THROWS_AS(parse_run_config(R"({"sweep": {"d": [3]}})"), ParseError);
  CHECK_THROWS_AS(parse_run_config("{}").require_network(), ParseError);
  CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), IoError);
}
