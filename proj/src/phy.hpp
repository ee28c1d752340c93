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

#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "scheduler.hpp"

namespace hcb {

using Complex = std::complex<double>;

// gains(j, i) = h_ji, the gain from transmitter i to receiver j.
struct ChannelMatrix {
  Eigen::MatrixXcd gains;
  std::uint64_t seed = 0;

  int rx_count() const noexcept { return static_cast<int>(gains.rows()); }
  int tx_count() const noexcept { return static_cast<int>(gains.cols()); }
  Complex gain(int rx, int tx) const { return gains(rx, tx); }
};

// K_R x K_T i.i.d. unit-variance circularly-symmetric complex Gaussian gains.
ChannelMatrix sample_channel(const DerivedParams& p, std::uint64_t seed);

// Rank-one gains h_ji = u_j * v_i. Every zero-forcing system with two or more
// transmitters is singular under this model; used to exercise failure paths.
ChannelMatrix sample_rank_one_channel(const DerivedParams& p, std::uint64_t seed);

struct Tolerances {
  double residual = 1e-9;
  double max_condition = 1e8;
};

// Transmit coefficients of one packet over its transmitter set.
struct PacketPrecoder {
  IndexSet tx;                  // == packet.subfile.tx_set
  std::vector<Complex> coeffs;  // coeffs[k] is used by transmitter tx[k]
  double condition_number = 0.0;
};

struct PrecoderSet {
  std::vector<PacketPrecoder> packets;  // indexed by packet offset

  double worst_condition() const noexcept;
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, int packet_offset, double condition)
      : Error(ErrorKind::Solver, what), packet_offset_(packet_offset), condition_(condition) {}

  int packet_offset() const noexcept { return packet_offset_; }
  double condition_number() const noexcept { return condition_; }

 private:
  int packet_offset_;
  double condition_;
};

// Per packet, solves sum_{i in T(l)} h_ri * a_i = 0 at its zero-forced
// receivers and = 1 at its target. Throws SolverError when a system's
// condition number exceeds the threshold.
PrecoderSet solve_step_precoders(const DeliveryStep& step, const ChannelMatrix& h,
                                 const Tolerances& tol = {});

struct ReceiverOutcome {
  int rx = 0;
  std::vector<Complex> effective;  // per packet offset
  Complex remainder;               // estimate of the desired symbol
  double residual = 0.0;           // |remainder - desired symbol|
  double zf_leak = 0.0;            // max |effective| over this receiver's zero-forced packets
  bool decoded = false;
};

struct StepSimReport {
  std::vector<ReceiverOutcome> receivers;  // in step.receivers() order
  std::vector<double> condition_numbers;   // per packet
  double worst_residual = 0.0;
  double worst_zf_leak = 0.0;
  double worst_condition = 0.0;
  bool success = false;
};

// Transmits one unit-modulus symbol per packet through h, adds noise, and has
// every receiver subtract its cached packets. Noiseless runs decode when the
// residual is within tolerance; noisy runs decode when the hard QPSK
// decision recovers the sent symbol.
StepSimReport simulate_step(const DeliveryStep& step, const ChannelMatrix& h,
                            const PrecoderSet& precoders, double noise_variance,
                            std::uint64_t seed, double tolerance = 1e-9);

struct StepRecord {
  std::size_t step = 0;
  double worst_residual = 0.0;
  double worst_zf_leak = 0.0;
  double condition_number = 0.0;
  struct Receiver {
    int rx = 0;
    double residual = 0.0;
    double zf_leak = 0.0;
    bool decoded = false;
  };
  std::vector<Receiver> receivers;
  bool success = false;
};

struct DecodabilityReport {
  bool all_decoded = false;
  std::size_t steps = 0;
  std::size_t failed_steps = 0;
  double worst_residual = 0.0;
  double worst_zf_leak = 0.0;
  double worst_condition = 0.0;
  std::vector<StepRecord> per_step;

  // step,receiver,residual,zf_leak,decoded,condition_number
  std::string to_csv() const;
};

// Solves and simulates every step noiselessly. A SolverError is rethrown with
// the step index in its message.
DecodabilityReport verify_schedule_decodable(const Schedule& s, const ChannelMatrix& h,
                                             const Tolerances& tol = {},
                                             double noise_variance = 0.0,
                                             std::uint64_t symbol_seed = 0);

}  // namespace hcb
