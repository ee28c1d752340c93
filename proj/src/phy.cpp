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

#include "phy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hcb {

ChannelMatrix sample_channel(const DerivedParams& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ChannelMatrix h;
  h.seed = seed;
  h.gains.resize(p.rx_count(), p.tx_count());
  for (int j = 0; j < p.rx_count(); ++j)
    for (int i = 0; i < p.tx_count(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      h.gains(j, i) = Complex(re, im);
    }
  return h;
}

ChannelMatrix sample_rank_one_channel(const DerivedParams& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Eigen::VectorXcd u(p.rx_count()), v(p.tx_count());
  for (auto& x : u) x = Complex(normal(rng), normal(rng));
  for (auto& x : v) x = Complex(normal(rng), normal(rng));
  ChannelMatrix h;
  h.seed = seed;
  h.gains = u * v.transpose();
  return h;
}

double PrecoderSet::worst_condition() const noexcept {
  double w = 0.0;
  for (const auto& pk : packets) w = std::max(w, pk.condition_number);
  return w;
}

PrecoderSet solve_step_precoders(const DeliveryStep& step, const ChannelMatrix& h,
                                 const Tolerances& tol) {
  PrecoderSet out;
  for (std::size_t l = 0; l < step.packets.size(); ++l) {
    const auto& pkt = step.packets[l];
    const auto& tx = pkt.subfile.tx_set;
    const auto n = static_cast<Eigen::Index>(tx.size());
    if (pkt.pi_ddot.size() + 1 != tx.size())
      throw InvalidInput("packet needs exactly |tx_set| - 1 zero-forced receivers");

    // Row 0: target (normalization), rows 1..: zero-forced receivers.
    Eigen::MatrixXcd a(n, n);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
    b(0) = 1.0;
    for (Eigen::Index c = 0; c < n; ++c) {
      a(0, c) = h.gain(pkt.target, tx[c]);
      for (std::size_t r = 0; r < pkt.pi_ddot.size(); ++r)
        a(static_cast<Eigen::Index>(r + 1), c) = h.gain(pkt.pi_ddot[r], tx[c]);
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(n - 1);
    const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    if (!(cond <= tol.max_condition)) {
      std::ostringstream os;
      os << "zero-forcing system for packet " << l << " (" << format_packet(pkt)
         << ") is ill-conditioned: condition number " << cond << " > " << tol.max_condition;
      throw SolverError(os.str(), static_cast<int>(l), cond);
    }
    Eigen::VectorXcd x = a.fullPivLu().solve(b);

    PacketPrecoder pc;
    pc.tx = tx;
    pc.condition_number = cond;
    pc.coeffs.assign(x.data(), x.data() + x.size());
    out.packets.push_back(std::move(pc));
  }
  return out;
}

namespace {

Complex qpsk(std::mt19937_64& rng) {
  static const double s = std::sqrt(0.5);
  const auto bits = rng() & 3u;
  return {(bits & 1u) ? -s : s, (bits & 2u) ? -s : s};
}

Complex qpsk_decision(Complex z) {
  static const double s = std::sqrt(0.5);
  return {z.real() < 0 ? -s : s, z.imag() < 0 ? -s : s};
}

}  // namespace

StepSimReport simulate_step(const DeliveryStep& step, const ChannelMatrix& h,
                            const PrecoderSet& precoders, double noise_variance,
                            std::uint64_t seed, double tolerance) {
  if (precoders.packets.size() != step.packets.size())
    throw InvalidInput("precoder set does not match the step");
  if (noise_variance < 0.0) throw InvalidInput("noise variance must be non-negative");

  std::mt19937_64 rng(seed);
  const std::size_t npk = step.packets.size();
  std::vector<Complex> symbols(npk);
  for (auto& s : symbols) s = qpsk(rng);

  std::vector<Complex> transmit(static_cast<std::size_t>(h.tx_count()), Complex{});
  for (std::size_t l = 0; l < npk; ++l) {
    const auto& pc = precoders.packets[l];
    for (std::size_t k = 0; k < pc.tx.size(); ++k) transmit[pc.tx[k]] += pc.coeffs[k] * symbols[l];
  }

  std::normal_distribution<double> noise(0.0, std::sqrt(noise_variance / 2.0));
  StepSimReport rep;
  for (const auto& pc : precoders.packets) rep.condition_numbers.push_back(pc.condition_number);
  rep.worst_condition = precoders.worst_condition();
  rep.success = true;

  for (int rx : step.receivers()) {
    ReceiverOutcome out;
    out.rx = rx;
    Complex y{};
    for (int i = 0; i < h.tx_count(); ++i) y += h.gain(rx, i) * transmit[i];
    if (noise_variance > 0.0) y += Complex(noise(rng), noise(rng));

    int desired = -1;
    Complex known{};
    for (std::size_t l = 0; l < npk; ++l) {
      const auto& pc = precoders.packets[l];
      Complex eff{};
      for (std::size_t k = 0; k < pc.tx.size(); ++k) eff += h.gain(rx, pc.tx[k]) * pc.coeffs[k];
      out.effective.push_back(eff);
      switch (packet_role(step, static_cast<int>(l), rx)) {
        case ReceiverRole::Desired: desired = static_cast<int>(l); break;
        case ReceiverRole::CacheCancel: known += eff * symbols[l]; break;
        case ReceiverRole::ZeroForced: out.zf_leak = std::max(out.zf_leak, std::abs(eff)); break;
      }
    }

    const Complex gain = out.effective[static_cast<std::size_t>(desired)];
    const Complex sent = symbols[static_cast<std::size_t>(desired)];
    if (std::abs(gain) == 0.0) {
      out.remainder = Complex{};
      out.residual = std::numeric_limits<double>::infinity();
      out.decoded = false;
    } else {
      out.remainder = (y - known) / gain;
      out.residual = std::abs(out.remainder - sent);
      // Noiseless decoding also demands that zero-forcing actually nulled
      // every interfering packet, not just that the sum happened to cancel.
      out.decoded = noise_variance == 0.0
                        ? out.residual <= tolerance && out.zf_leak <= tolerance
                        : qpsk_decision(out.remainder) == sent;
    }
    if (std::isnan(out.residual)) out.decoded = false;
    rep.worst_residual = std::max(rep.worst_residual, out.residual);
    rep.worst_zf_leak = std::max(rep.worst_zf_leak, out.zf_leak);
    rep.success = rep.success && out.decoded;
    rep.receivers.push_back(std::move(out));
  }
  return rep;
}

DecodabilityReport verify_schedule_decodable(const Schedule& s, const ChannelMatrix& h,
                                             const Tolerances& tol, double noise_variance,
                                             std::uint64_t symbol_seed) {
  if (h.rx_count() != s.params.rx_count() || h.tx_count() != s.params.tx_count())
    throw InvalidInput("channel shape does not match the schedule's network");
  DecodabilityReport rep;
  rep.steps = s.steps.size();
  for (std::size_t k = 0; k < s.steps.size(); ++k) {
    PrecoderSet pre;
    try {
      pre = solve_step_precoders(s.steps[k], h, tol);
    } catch (const SolverError& e) {
      throw SolverError("step " + std::to_string(k) + ": " + e.what(), e.packet_offset(),
                        e.condition_number());
    }
    const auto sim = simulate_step(s.steps[k], h, pre, noise_variance,
                                   symbol_seed + static_cast<std::uint64_t>(k), tol.residual);
    StepRecord rec;
    rec.step = k;
    rec.worst_residual = sim.worst_residual;
    rec.worst_zf_leak = sim.worst_zf_leak;
    rec.condition_number = sim.worst_condition;
    rec.success = sim.success;
    for (const auto& r : sim.receivers) rec.receivers.push_back({r.rx, r.residual, r.zf_leak, r.decoded});
    rep.worst_residual = std::max(rep.worst_residual, sim.worst_residual);
    rep.worst_zf_leak = std::max(rep.worst_zf_leak, sim.worst_zf_leak);
    rep.worst_condition = std::max(rep.worst_condition, sim.worst_condition);
    if (!sim.success) ++rep.failed_steps;
    rep.per_step.push_back(std::move(rec));
  }
  rep.all_decoded = rep.failed_steps == 0;
  return rep;
}

std::string DecodabilityReport::to_csv() const {
  std::ostringstream os;
  os.precision(6);
  os << std::scientific;
  os << "step,receiver,residual,zf_leak,decoded,condition_number\n";
  for (const auto& rec : per_step)
    for (const auto& r : rec.receivers)
      os << rec.step << ',' << r.rx << ',' << r.residual << ',' << r.zf_leak << ','
         << (r.decoded ? 1 : 0) << ',' << rec.condition_number << '\n';
  return os.str();
}

}  // namespace hcb
