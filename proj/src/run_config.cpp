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

#include "run_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace hcb {

using nlohmann::json;

DemandVector DemandSpec::resolve(const DerivedParams& p) const {
  DemandVector d;
  switch (kind) {
    case Kind::Distinct: d = DemandVector::distinct(p); break;
    case Kind::UniformRandom: d = DemandVector::uniform_random(p, seed); break;
    case Kind::Explicit: d.files = files; break;
  }
  check_demand(d, p);
  return d;
}

const NetworkConfig& RunConfig::require_network() const {
  if (!network) throw ParseError("config: missing required section 'network'");
  return *network;
}

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("config: missing required field '" + where + key + "'");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& name) {
  if (!v.is_number_integer()) throw ParseError("config: '" + name + "' must be an integer");
  return v.get<std::int64_t>();
}

std::uint64_t as_seed(const json& v, const std::string& name) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
    throw ParseError("config: '" + name + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

double as_real(const json& v, const std::string& name) {
  if (!v.is_number()) throw ParseError("config: '" + name + "' must be a number");
  return v.get<double>();
}

// Memories may be integers, "p/q" strings or decimals; decimals go through
// their shortest text form so 0.5 stays exactly 1/2.
Rational as_memory(const json& v, const std::string& name) {
  try {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number()) return parse_rational(v.dump());
  } catch (const Error& e) {
    throw ParseError("config: '" + name + "': " + e.what());
  }
  throw ParseError("config: '" + name + "' must be a number or a \"p/q\" string");
}

NetworkConfig parse_network(const json& n, const std::string& where) {
  if (!n.is_object()) throw ParseError("config: '" + where + "' must be an object");
  NetworkConfig c;
  c.tx_count = as_int(field(n, "K_T", where + "."), where + ".K_T");
  c.rx_count = as_int(field(n, "K_R", where + "."), where + ".K_R");
  c.tx_memory = as_memory(field(n, "M_T", where + "."), where + ".M_T");
  c.rx_memory = as_memory(field(n, "M_R", where + "."), where + ".M_R");
  c.file_count = as_int(field(n, "N", where + "."), where + ".N");
  return c;
}

DemandSpec parse_demand(const json& d) {
  DemandSpec s;
  if (d.is_string()) {
    const auto name = d.get<std::string>();
    if (name != "distinct") throw ParseError("config: unknown demand '" + name + "'");
    return s;
  }
  if (d.is_array()) {
    s.kind = DemandSpec::Kind::Explicit;
    for (const auto& v : d) s.files.push_back(static_cast<int>(as_int(v, "demand[]")));
    return s;
  }
  if (d.is_object() && d.contains("uniform_random")) {
    s.kind = DemandSpec::Kind::UniformRandom;
    s.seed = as_seed(d.at("uniform_random"), "demand.uniform_random");
    return s;
  }
  throw ParseError(
      "config: 'demand' must be \"distinct\", an array of file indices or {\"uniform_random\": seed}");
}

std::vector<int> int_list(const json& v, const std::string& name) {
  std::vector<int> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(static_cast<int>(as_int(x, name)));
  } else if (v.is_string()) {
    out = parse_grid_spec("d=" + v.get<std::string>()).d;  // reuses the a:b list syntax
  } else {
    out.push_back(static_cast<int>(as_int(v, name)));
  }
  return out;
}

}  // namespace

namespace {

RunConfig parse_root(const json& root) {
  if (!root.is_object()) throw ParseError("config: top level must be an object");

  RunConfig rc;
  if (root.contains("network")) rc.network = parse_network(root.at("network"), "network");
  if (root.contains("demand")) rc.demand = parse_demand(root.at("demand"));

  if (root.contains("channel")) {
    const auto& c = root.at("channel");
    if (!c.is_object()) throw ParseError("config: 'channel' must be an object");
    if (c.contains("seed")) rc.channel.seed = as_seed(c.at("seed"), "channel.seed");
    if (c.contains("retries")) {
      const auto r = as_int(c.at("retries"), "channel.retries");
      if (r < 0) throw ParseError("config: 'channel.retries' must be non-negative");
      rc.channel.retries = static_cast<int>(r);
    }
    if (c.contains("model")) {
      const auto m = c.at("model").get<std::string>();
      if (m == "gaussian")
        rc.channel.model = ChannelModel::Gaussian;
      else if (m == "rank-one")
        rc.channel.model = ChannelModel::RankOne;
      else
        throw ParseError("config: unknown channel model '" + m + "'");
    }
  }
  if (root.contains("symbol_seed")) rc.symbol_seed = as_seed(root.at("symbol_seed"), "symbol_seed");
  if (root.contains("noise_variance")) {
    rc.noise_variance = as_real(root.at("noise_variance"), "noise_variance");
    if (rc.noise_variance < 0) throw ParseError("config: 'noise_variance' must be non-negative");
  }
  if (root.contains("tolerances")) {
    const auto& t = root.at("tolerances");
    if (t.contains("residual")) rc.tolerances.residual = as_real(t.at("residual"), "tolerances.residual");
    if (t.contains("condition"))
      rc.tolerances.max_condition = as_real(t.at("condition"), "tolerances.condition");
  }
  if (root.contains("output")) {
    const auto& o = root.at("output");
    if (o.contains("dir")) rc.output_dir = o.at("dir").get<std::string>();
  }
  if (root.contains("sweep")) {
    const auto& s = root.at("sweep");
    if (!s.is_object()) throw ParseError("config: 'sweep' must be an object");
    if (s.contains("d") || s.contains("t") || s.contains("delta")) {
      GridSpec g;
      g.d = int_list(field(s, "d", "sweep."), "d");
      g.t = int_list(field(s, "t", "sweep."), "t");
      g.delta = int_list(field(s, "delta", "sweep."), "delta");
      rc.sweep_grid = g;
    }
    if (s.contains("configs")) {
      const auto& list = s.at("configs");
      if (!list.is_array()) throw ParseError("config: 'sweep.configs' must be an array");
      for (std::size_t i = 0; i < list.size(); ++i)
        rc.sweep_configs.push_back(
            parse_network(list[i], "sweep.configs[" + std::to_string(i) + "]"));
    }
  }
  return rc;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  try {
    return parse_root(json::parse(text));
  } catch (const json::exception& e) {
    // Type mismatches deeper in the document land here too.
    throw ParseError(std::string("config: ") + e.what());
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

ChannelMatrix sample_configured_channel(const ChannelSettings& c, const DerivedParams& p,
                                        std::uint64_t seed) {
  return c.model == ChannelModel::RankOne ? sample_rank_one_channel(p, seed)
                                          : sample_channel(p, seed);
}

}  // namespace hcb
