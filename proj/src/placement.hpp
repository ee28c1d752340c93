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
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "error.hpp"
#include "exact.hpp"

namespace hcb {

// K_T transmitters and K_R receivers with per-node caches of M_T / M_R files
// over a library of N files. Cache sizes may be fractional.
struct NetworkConfig {
  std::int64_t tx_count = 0;
  std::int64_t rx_count = 0;
  Rational tx_memory = 0;
  Rational rx_memory = 0;
  std::int64_t file_count = 0;

  Rational tx_caching() const;  // K_T * M_T / N
  Rational rx_caching() const;  // K_R * M_R / N
};

enum class Violation {
  NonPositiveParameter = 1,
  LibraryNotCovered,
  NonIntegerTxCaching,
  NonIntegerRxCaching,
  NonIntegerTxPerDim,
  NonIntegerRxPerDim,
  NonIntegerDelta,
  RxPerDimTooSmall,
  DofExceedsReceivers,
};

const char* violation_name(Violation v) noexcept;

struct ViolationRecord {
  Violation code;
  std::string message;
};

// t_T, t_R (dimension counts), D_T, D_R (points per dimension) and delta.
struct DerivedParams {
  NetworkConfig config;
  int tx_dims = 0;     // t_T
  int rx_dims = 0;     // t_R
  int tx_per_dim = 0;  // D_T
  int rx_per_dim = 0;  // D_R
  int delta = 0;

  int tx_count() const noexcept { return tx_dims * tx_per_dim; }
  int rx_count() const noexcept { return rx_dims * rx_per_dim; }
  int file_count() const noexcept { return static_cast<int>(config.file_count); }
  // Packets per delivery step, t_T + t_R.
  int step_size() const noexcept { return tx_dims + rx_dims; }
};

struct ConfigValidation {
  std::vector<ViolationRecord> violations;
  DerivedParams params;  // meaningful only when ok()

  bool ok() const noexcept { return violations.empty(); }
  bool has(Violation v) const noexcept;
};

// Collects every violated constraint rather than stopping at the first.
ConfigValidation validate_config(const NetworkConfig& cfg);

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<ViolationRecord> violations);
  const std::vector<ViolationRecord>& violations() const noexcept { return violations_; }

 private:
  std::vector<ViolationRecord> violations_;
};

// validate_config, throwing ValidationError on any violation.
DerivedParams derive_params(const NetworkConfig& cfg);

DimensionPartition tx_dimensions(const DerivedParams& p);
DimensionPartition rx_dimensions(const DerivedParams& p);

// One subfile W_{n,T,R}: cached exclusively by the transmitters in tx_set and
// the receivers in rx_set.
struct SubfileId {
  int file = 0;
  IndexSet tx_set;
  IndexSet rx_set;

  auto operator<=>(const SubfileId&) const = default;
  bool operator==(const SubfileId&) const = default;
};

// All transmitter sets (one transmitter per transmitter dimension), lexicographic.
std::vector<IndexSet> tx_tuples(const DerivedParams& p);
// All receiver sets (one receiver per receiver dimension), lexicographic.
std::vector<IndexSet> rx_tuples(const DerivedParams& p);

// N * D_T^t_T * D_R^t_R subfiles: file-major, then tx_set, then rx_set.
std::vector<SubfileId> split_files(const DerivedParams& p);

enum class Side { Transmitter, Receiver };

struct CacheOwner {
  Side side = Side::Transmitter;
  int index = 0;
};

struct CacheManifest {
  CacheOwner owner;
  std::vector<SubfileId> subfiles;
};

CacheManifest cache_manifest(const DerivedParams& p, CacheOwner owner);

// Exact check that the manifest fills the owner's memory: each subfile is
// F / (D_T^t_T * D_R^t_R) packets, the budget is M * F.
bool verify_memory_budget(const DerivedParams& p, const CacheManifest& m);

// Tab-separated export, one subfile per line.
std::string export_manifest(const CacheManifest& m);

std::string format_set(const IndexSet& s);

}  // namespace hcb
