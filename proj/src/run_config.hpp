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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "analytics.hpp"
#include "phy.hpp"
#include "placement.hpp"
#include "scheduler.hpp"

namespace hcb {

struct DemandSpec {
  enum class Kind { Distinct, Explicit, UniformRandom };

  Kind kind = Kind::Distinct;
  std::vector<int> files;  // Explicit only
  std::uint64_t seed = 0;  // UniformRandom only

  // Checks length and range against p.
  DemandVector resolve(const DerivedParams& p) const;
};

enum class ChannelModel { Gaussian, RankOne };

struct ChannelSettings {
  std::uint64_t seed = 1;
  int retries = 3;
  ChannelModel model = ChannelModel::Gaussian;
};

// Everything a CLI run needs. Defaults: distinct demand, channel seed 1 with
// 3 resampling retries, symbol seed 7, noiseless, residual tolerance 1e-9,
// condition limit 1e8, output directory "out".
struct RunConfig {
  std::optional<NetworkConfig> network;
  DemandSpec demand;
  ChannelSettings channel;
  std::uint64_t symbol_seed = 7;
  double noise_variance = 0.0;
  Tolerances tolerances;
  std::string output_dir = "out";
  std::optional<GridSpec> sweep_grid;
  std::vector<NetworkConfig> sweep_configs;

  const NetworkConfig& require_network() const;
};

// JSON text; see README for the schema. Throws ParseError on malformed input
// or a missing required field.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

ChannelMatrix sample_configured_channel(const ChannelSettings& c, const DerivedParams& p,
                                        std::uint64_t seed);

}  // namespace hcb
