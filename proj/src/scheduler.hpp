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
#include "placement.hpp"

namespace hcb {

// files[j] is the file requested by receiver j. Repeats are allowed.
struct DemandVector {
  std::vector<int> files;

  // d_j = j mod N.
  static DemandVector distinct(const DerivedParams& p);
  static DemandVector uniform_random(const DerivedParams& p, std::uint64_t seed);
};

// Throws InvalidInput unless the demand has K_R entries, each in [0, N).
void check_demand(const DemandVector& d, const DerivedParams& p);

// One delivery-phase packet: a subfile further refined by the receiver
// sequences pi_dot (receivers that cancel it from cache, in order) and
// pi_ddot (receivers it is zero-forced at, in order).
struct PacketId {
  SubfileId subfile;
  std::vector<int> pi_dot;
  std::vector<int> pi_ddot;
  int target = 0;

  auto operator<=>(const PacketId&) const = default;
  bool operator==(const PacketId&) const = default;
};

std::string format_packet(const PacketId& pkt);

enum class ReceiverRole { Desired, CacheCancel, ZeroForced };

const char* role_name(ReceiverRole r) noexcept;

// t_T + t_R packets delivered together. packets[l] is the packet at cyclic
// offset l of pi; it is sent by transmitters packets[l].subfile.tx_set.
struct DeliveryStep {
  IndexSet base_tx;
  std::vector<IndexSet> rx_family;  // one (delta+1)-subset per receiver dimension
  Permutation pi;
  std::vector<PacketId> packets;
  IndexSet active_tx;

  // The step's receivers, sorted.
  IndexSet receivers() const;
};

struct Schedule {
  DerivedParams params;
  DemandVector demand;
  std::vector<DeliveryStep> steps;

  std::size_t packet_count() const noexcept;
};

// T(l): the base transmitter tuple with selected dimensions advanced by one
// position (mod D_T) inside their dimension. Offsets 1..t_T advance
// dimensions 0..l-1; offsets t_T+1..t_T+t_R-1 advance dimensions l-t_T..t_T-1.
IndexSet shift_tx(const IndexSet& base, int offset, const DerivedParams& p);

// Subfiles of file d_j not cached by receiver j.
std::vector<SubfileId> demanded_subfiles(int rx, const DemandVector& d, const DerivedParams& p);

// Splits one demanded subfile into its delivery packets. Reusable across calls
// for the same parameters.
class SubfilePacketizer {
 public:
  explicit SubfilePacketizer(const DerivedParams& p);

  std::vector<PacketId> packets(int rx, const SubfileId& subfile) const;

 private:
  DerivedParams params_;
  struct Pattern {
    std::vector<int> key;  // local labels: [pi(0), pi(t_R), sorted pi(1..t_R-1)]
    std::vector<std::size_t> perms;
    auto operator<=>(const Pattern&) const = default;
  };
  std::vector<Permutation> local_perms_;
  std::vector<Pattern> patterns_;  // sorted by key
};

std::vector<PacketId> enumerate_subfile_packets(int rx, const SubfileId& subfile,
                                                const DerivedParams& p);

// One step per (base tx tuple, receiver family, circular hypercube
// permutation), in lexicographic order of that triple.
Schedule build_schedule(const DemandVector& d, const DerivedParams& p);

// Number of steps build_schedule produces.
BigInt expected_step_count(const DerivedParams& p);
// Total packets over all receivers, closed form.
BigInt expected_total_packets(const DerivedParams& p);
// Packets each receiver needs, closed form.
BigInt expected_packets_per_receiver(const DerivedParams& p);

struct CoverageReport {
  bool passed = false;
  std::uint64_t scheduled_packets = 0;
  std::uint64_t demanded_packets = 0;
  std::uint64_t steps = 0;
  BigInt expected_total;
  BigInt expected_per_receiver;
  std::vector<std::uint64_t> delivered_per_receiver;
  std::uint64_t malformed_steps = 0;
  std::uint64_t missing_count = 0;
  std::uint64_t duplicate_count = 0;
  std::uint64_t unexpected_count = 0;
  // First few offenders of each kind.
  std::vector<PacketId> missing;
  std::vector<PacketId> duplicated;
  std::vector<PacketId> unexpected;

  std::string to_text() const;
};

// Checks that the schedule delivers every demanded packet exactly once and
// that the totals match the closed-form counts.
CoverageReport verify_exact_cover(const Schedule& s, const DemandVector& d, const DerivedParams& p);

// Role of receiver `rx` for the packet at offset `offset` of `step`.
ReceiverRole packet_role(const DeliveryStep& step, int offset, int rx);

// Stable text export of the whole schedule.
std::string export_schedule(const Schedule& s);

}  // namespace hcb
