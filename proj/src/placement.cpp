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

#include "placement.hpp"

#include <algorithm>
#include <sstream>

#include "error.hpp"

namespace hcb {

Rational NetworkConfig::tx_caching() const {
  return Rational(tx_count) * tx_memory / file_count;
}

Rational NetworkConfig::rx_caching() const {
  return Rational(rx_count) * rx_memory / file_count;
}

const char* violation_name(Violation v) noexcept {
  switch (v) {
    case Violation::NonPositiveParameter: return "non-positive-parameter";
    case Violation::LibraryNotCovered: return "library-not-covered";
    case Violation::NonIntegerTxCaching: return "non-integer-t_T";
    case Violation::NonIntegerRxCaching: return "non-integer-t_R";
    case Violation::NonIntegerTxPerDim: return "non-integer-D_T";
    case Violation::NonIntegerRxPerDim: return "non-integer-D_R";
    case Violation::NonIntegerDelta: return "non-integer-delta";
    case Violation::RxPerDimTooSmall: return "D_R-below-delta-plus-1";
    case Violation::DofExceedsReceivers: return "t_T-plus-t_R-exceeds-K_R";
  }
  return "unknown";
}

bool ConfigValidation::has(Violation v) const noexcept {
  return std::any_of(violations.begin(), violations.end(),
                     [v](const ViolationRecord& r) { return r.code == v; });
}

namespace {

std::string join_messages(const std::vector<ViolationRecord>& v) {
  std::string out = "invalid network configuration:";
  for (const auto& r : v) out += "\n  [" + std::string(violation_name(r.code)) + "] " + r.message;
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<ViolationRecord> violations)
    : Error(ErrorKind::Validation, join_messages(violations)),
      violations_(std::move(violations)) {}

ConfigValidation validate_config(const NetworkConfig& cfg) {
  ConfigValidation out;
  auto fail = [&](Violation v, std::string msg) {
    out.violations.push_back({v, std::move(msg)});
  };

  if (cfg.tx_count <= 0 || cfg.rx_count <= 0 || cfg.file_count <= 0 ||
      cfg.tx_memory <= 0 || cfg.rx_memory <= 0) {
    fail(Violation::NonPositiveParameter, "K_T, K_R, M_T, M_R and N must all be positive");
    return out;
  }

  const Rational t_tx = cfg.tx_caching();
  const Rational t_rx = cfg.rx_caching();
  const Rational d_tx = Rational(cfg.file_count) / cfg.tx_memory;
  const Rational d_rx = Rational(cfg.file_count) / cfg.rx_memory;
  const Rational delta = t_tx / t_rx;

  if (t_tx < 1)
    fail(Violation::LibraryNotCovered,
         "K_T*M_T = " + to_string(Rational(cfg.tx_count) * cfg.tx_memory) +
             " is below N = " + std::to_string(cfg.file_count));
  if (!is_integer(t_tx))
    fail(Violation::NonIntegerTxCaching, "t_T = K_T*M_T/N = " + to_string(t_tx));
  if (!is_integer(t_rx))
    fail(Violation::NonIntegerRxCaching, "t_R = K_R*M_R/N = " + to_string(t_rx));
  if (!is_integer(d_tx))
    fail(Violation::NonIntegerTxPerDim, "D_T = N/M_T = " + to_string(d_tx));
  if (!is_integer(d_rx))
    fail(Violation::NonIntegerRxPerDim, "D_R = N/M_R = " + to_string(d_rx));
  if (!is_integer(delta))
    fail(Violation::NonIntegerDelta, "delta = t_T/t_R = " + to_string(delta));
  if (d_rx < delta + 1)
    fail(Violation::RxPerDimTooSmall,
         "D_R = " + to_string(d_rx) + " < delta + 1 = " + to_string(delta + 1));
  if (t_tx + t_rx > cfg.rx_count)
    fail(Violation::DofExceedsReceivers,
         "t_T + t_R = " + to_string(t_tx + t_rx) + " > K_R = " + std::to_string(cfg.rx_count));

  if (out.ok()) {
    out.params.config = cfg;
    out.params.tx_dims = t_tx.convert_to<int>();
    out.params.rx_dims = t_rx.convert_to<int>();
    out.params.tx_per_dim = d_tx.convert_to<int>();
    out.params.rx_per_dim = d_rx.convert_to<int>();
    out.params.delta = delta.convert_to<int>();
  }
  return out;
}

DerivedParams derive_params(const NetworkConfig& cfg) {
  auto v = validate_config(cfg);
  if (!v.ok()) throw ValidationError(std::move(v.violations));
  return v.params;
}

DimensionPartition tx_dimensions(const DerivedParams& p) {
  return DimensionPartition::contiguous(p.tx_per_dim, p.tx_dims);
}

DimensionPartition rx_dimensions(const DerivedParams& p) {
  return DimensionPartition::contiguous(p.rx_per_dim, p.rx_dims);
}

std::vector<IndexSet> tx_tuples(const DerivedParams& p) {
  const auto part = tx_dimensions(p);
  return unordered_product(part.groups());
}

std::vector<IndexSet> rx_tuples(const DerivedParams& p) {
  const auto part = rx_dimensions(p);
  return unordered_product(part.groups());
}

std::vector<SubfileId> split_files(const DerivedParams& p) {
  const auto txs = tx_tuples(p);
  const auto rxs = rx_tuples(p);
  std::vector<SubfileId> out;
  out.reserve(static_cast<std::size_t>(p.file_count()) * txs.size() * rxs.size());
  for (int n = 0; n < p.file_count(); ++n)
    for (const auto& t : txs)
      for (const auto& r : rxs) out.push_back({n, t, r});
  return out;
}

CacheManifest cache_manifest(const DerivedParams& p, CacheOwner owner) {
  const int limit = owner.side == Side::Transmitter ? p.tx_count() : p.rx_count();
  if (owner.index < 0 || owner.index >= limit)
    throw InvalidInput("cache owner index " + std::to_string(owner.index) +
                       " out of range [0, " + std::to_string(limit) + ")");
  CacheManifest m{owner, {}};
  for (auto& s : split_files(p)) {
    const IndexSet& holders = owner.side == Side::Transmitter ? s.tx_set : s.rx_set;
    if (std::binary_search(holders.begin(), holders.end(), owner.index))
      m.subfiles.push_back(std::move(s));
  }
  return m;
}

bool verify_memory_budget(const DerivedParams& p, const CacheManifest& m) {
  const BigInt subfiles_per_file = ipow(BigInt(p.tx_per_dim), p.tx_dims) *
                                   ipow(BigInt(p.rx_per_dim), p.rx_dims);
  // In units of F (packets per file).
  const Rational used = Rational(BigInt(m.subfiles.size()), subfiles_per_file);
  const Rational& budget =
      m.owner.side == Side::Transmitter ? p.config.tx_memory : p.config.rx_memory;
  return used == budget;
}

std::string format_set(const IndexSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

std::string export_manifest(const CacheManifest& m) {
  std::ostringstream os;
  os << "# hcb-manifest v1 owner=" << (m.owner.side == Side::Transmitter ? "tx" : "rx") << ':'
     << m.owner.index << " subfiles=" << m.subfiles.size() << '\n';
  os << "file\ttx_set\trx_set\n";
  for (const auto& s : m.subfiles)
    os << s.file << '\t' << format_set(s.tx_set) << '\t' << format_set(s.rx_set) << '\n';
  return os.str();
}

}  // namespace hcb
