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

#include "scheduler.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "error.hpp"

namespace hcb {

DemandVector DemandVector::distinct(const DerivedParams& p) {
  DemandVector d;
  for (int j = 0; j < p.rx_count(); ++j) d.files.push_back(j % p.file_count());
  return d;
}

DemandVector DemandVector::uniform_random(const DerivedParams& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, p.file_count() - 1);
  DemandVector d;
  for (int j = 0; j < p.rx_count(); ++j) d.files.push_back(pick(rng));
  return d;
}

void check_demand(const DemandVector& d, const DerivedParams& p) {
  if (d.files.size() != static_cast<std::size_t>(p.rx_count()))
    throw InvalidInput("demand has " + std::to_string(d.files.size()) + " entries, expected K_R = " +
                       std::to_string(p.rx_count()));
  for (std::size_t j = 0; j < d.files.size(); ++j)
    if (d.files[j] < 0 || d.files[j] >= p.file_count())
      throw InvalidInput("demand of receiver " + std::to_string(j) + " is file " +
                         std::to_string(d.files[j]) + ", outside [0, " +
                         std::to_string(p.file_count()) + ")");
}

std::string format_packet(const PacketId& pkt) {
  std::ostringstream os;
  os << "file=" << pkt.subfile.file << " tx=" << format_set(pkt.subfile.tx_set)
     << " pi_dot=" << format_set(pkt.pi_dot) << " pi_ddot=" << format_set(pkt.pi_ddot)
     << " target=" << pkt.target;
  return os.str();
}

const char* role_name(ReceiverRole r) noexcept {
  switch (r) {
    case ReceiverRole::Desired: return "desired";
    case ReceiverRole::CacheCancel: return "cache-cancel";
    case ReceiverRole::ZeroForced: return "zero-forced";
  }
  return "unknown";
}

IndexSet DeliveryStep::receivers() const {
  IndexSet r = pi.order;
  std::sort(r.begin(), r.end());
  return r;
}

std::size_t Schedule::packet_count() const noexcept {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.packets.size();
  return n;
}

IndexSet shift_tx(const IndexSet& base, int offset, const DerivedParams& p) {
  const int t_tx = p.tx_dims;
  const int d_tx = p.tx_per_dim;
  if (offset < 0 || offset >= p.step_size())
    throw InvalidInput("shift offset " + std::to_string(offset) + " outside [0, " +
                       std::to_string(p.step_size()) + ")");
  if (base.size() != static_cast<std::size_t>(t_tx))
    throw InvalidInput("base transmitter tuple must hold one transmitter per dimension");
  for (int i = 0; i < t_tx; ++i)
    if (base[i] / d_tx != i)
      throw InvalidInput("transmitter " + std::to_string(base[i]) + " is not in dimension " +
                         std::to_string(i));

  int lo = 0, hi = -1;  // dimensions [lo, hi] advance
  if (offset >= 1 && offset <= t_tx) {
    hi = offset - 1;
  } else if (offset > t_tx) {
    lo = offset - t_tx;
    hi = t_tx - 1;
  }
  IndexSet out = base;
  for (int i = lo; i <= hi; ++i) out[i] = i * d_tx + (base[i] - i * d_tx + 1) % d_tx;
  return out;
}

std::vector<SubfileId> demanded_subfiles(int rx, const DemandVector& d, const DerivedParams& p) {
  check_demand(d, p);
  if (rx < 0 || rx >= p.rx_count()) throw InvalidInput("receiver index out of range");
  std::vector<SubfileId> out;
  const auto rxs = rx_tuples(p);
  for (const auto& t : tx_tuples(p))
    for (const auto& r : rxs)
      if (!std::binary_search(r.begin(), r.end(), rx)) out.push_back({d.files[rx], t, r});
  return out;
}

SubfilePacketizer::SubfilePacketizer(const DerivedParams& p) : params_(p) {
  const int t_rx = p.rx_dims;
  local_perms_ = enumerate_hypercube_permutations(DimensionPartition::contiguous(p.delta + 1, t_rx));
  for (std::size_t k = 0; k < local_perms_.size(); ++k) {
    const auto& perm = local_perms_[k].order;
    std::vector<int> key{perm[0], perm[t_rx]};
    std::vector<int> middle(perm.begin() + 1, perm.begin() + t_rx);
    std::sort(middle.begin(), middle.end());
    key.insert(key.end(), middle.begin(), middle.end());
    auto it = std::find_if(patterns_.begin(), patterns_.end(),
                           [&](const Pattern& pt) { return pt.key == key; });
    if (it == patterns_.end())
      patterns_.push_back({key, {k}});
    else
      it->perms.push_back(k);
  }
  std::sort(patterns_.begin(), patterns_.end());
}

std::vector<PacketId> SubfilePacketizer::packets(int rx, const SubfileId& subfile) const {
  const DerivedParams& p = params_;
  const int t_rx = p.rx_dims;
  const int d_rx = p.rx_per_dim;
  const int width = p.delta + 1;
  if (rx < 0 || rx >= p.rx_count()) throw InvalidInput("receiver index out of range");
  if (subfile.rx_set.size() != static_cast<std::size_t>(t_rx))
    throw InvalidInput("subfile rx_set must hold one receiver per dimension");
  for (int i = 0; i < t_rx; ++i)
    if (subfile.rx_set[i] / d_rx != i) throw InvalidInput("subfile rx_set is not a receiver tuple");
  if (std::binary_search(subfile.rx_set.begin(), subfile.rx_set.end(), rx))
    throw InvalidInput("receiver " + std::to_string(rx) + " already caches this subfile");

  const int own_dim = rx / d_rx;
  const int partner = subfile.rx_set[own_dim];  // r_{floor(j/D_R)}

  // Candidate (delta+1)-subsets per dimension: must contain the subfile's
  // receiver there, and in the target's dimension also the target.
  std::vector<std::vector<IndexSet>> choices(static_cast<std::size_t>(t_rx));
  for (int i = 0; i < t_rx; ++i) {
    IndexSet required{subfile.rx_set[i]};
    if (i == own_dim) required.push_back(rx);
    std::sort(required.begin(), required.end());
    IndexSet rest;
    for (int u = i * d_rx; u < (i + 1) * d_rx; ++u)
      if (!std::binary_search(required.begin(), required.end(), u)) rest.push_back(u);
    const int extra = width - static_cast<int>(required.size());
    if (extra == 0) {
      choices[i].push_back(required);
      continue;
    }
    for (auto& s : k_subsets(rest, extra)) {
      s.insert(s.end(), required.begin(), required.end());
      std::sort(s.begin(), s.end());
      choices[i].push_back(std::move(s));
    }
  }

  std::vector<PacketId> out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(t_rx), 0);
  bool more = true;
  while (more) {
    // local label u <-> family[u / width][u % width]
    auto local_of = [&](int global) {
      const int dim = global / d_rx;
      const auto& g = choices[dim][pick[dim]];
      return dim * width + static_cast<int>(std::lower_bound(g.begin(), g.end(), global) - g.begin());
    };
    auto global_of = [&](int local) { return choices[local / width][pick[local / width]][local % width]; };

    Pattern probe;
    probe.key = {local_of(rx), local_of(partner)};
    std::vector<int> middle;
    for (int i = 0; i < t_rx; ++i)
      if (i != own_dim) middle.push_back(local_of(subfile.rx_set[i]));
    std::sort(middle.begin(), middle.end());
    probe.key.insert(probe.key.end(), middle.begin(), middle.end());

    auto it = std::lower_bound(patterns_.begin(), patterns_.end(), probe,
                               [](const Pattern& a, const Pattern& b) { return a.key < b.key; });
    if (it != patterns_.end() && it->key == probe.key) {
      for (auto k : it->perms) {
        const auto& perm = local_perms_[k].order;
        PacketId pkt;
        pkt.subfile = subfile;
        pkt.target = rx;
        for (int pos = 1; pos <= t_rx; ++pos) pkt.pi_dot.push_back(global_of(perm[pos]));
        for (std::size_t pos = t_rx + 1; pos < perm.size(); ++pos)
          pkt.pi_ddot.push_back(global_of(perm[pos]));
        out.push_back(std::move(pkt));
      }
    }

    more = false;
    for (int k = t_rx - 1; k >= 0 && !more; --k) {
      if (++pick[k] < choices[k].size())
        more = true;
      else
        pick[k] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PacketId> enumerate_subfile_packets(int rx, const SubfileId& subfile,
                                                const DerivedParams& p) {
  return SubfilePacketizer(p).packets(rx, subfile);
}

Schedule build_schedule(const DemandVector& d, const DerivedParams& p) {
  check_demand(d, p);
  const int t_rx = p.rx_dims;
  const int width = p.delta + 1;
  const int len = p.step_size();

  std::vector<std::vector<IndexSet>> per_dim;
  const auto rx_dims = rx_dimensions(p);
  for (const auto& g : rx_dims.groups()) per_dim.push_back(k_subsets(g, width));
  std::vector<std::vector<IndexSet>> families;
  {
    std::vector<std::size_t> pick(static_cast<std::size_t>(t_rx), 0);
    bool more = true;
    while (more) {
      std::vector<IndexSet> fam;
      for (int i = 0; i < t_rx; ++i) fam.push_back(per_dim[i][pick[i]]);
      families.push_back(std::move(fam));
      more = false;
      for (int k = t_rx - 1; k >= 0 && !more; --k) {
        if (++pick[k] < per_dim[k].size())
          more = true;
        else
          pick[k] = 0;
      }
    }
  }

  // Circular hypercube permutations on local labels; the relabeling into a
  // family is order-preserving, so canonical forms and ordering carry over.
  const auto local_circ =
      enumerate_circular_hypercube_permutations(DimensionPartition::contiguous(width, t_rx));

  Schedule s;
  s.params = p;
  s.demand = d;
  const auto bases = tx_tuples(p);
  s.steps.reserve(bases.size() * families.size() * local_circ.size());
  for (const auto& base : bases) {
    std::vector<IndexSet> shifted;
    for (int l = 0; l < len; ++l) shifted.push_back(shift_tx(base, l, p));
    IndexSet active;
    for (const auto& t : shifted) active.insert(active.end(), t.begin(), t.end());
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());

    for (const auto& fam : families) {
      for (const auto& local : local_circ) {
        DeliveryStep step;
        step.base_tx = base;
        step.rx_family = fam;
        step.active_tx = active;
        step.pi.order.reserve(local.size());
        for (int u : local.order) step.pi.order.push_back(fam[u / width][u % width]);
        step.packets.reserve(static_cast<std::size_t>(len));
        for (int l = 0; l < len; ++l) {
          PacketId pkt;
          pkt.target = step.pi[l];
          pkt.subfile.file = d.files[pkt.target];
          pkt.subfile.tx_set = shifted[l];
          for (int k = 1; k <= t_rx; ++k) pkt.pi_dot.push_back(step.pi.at(l + k));
          for (int k = t_rx + 1; k < len; ++k) pkt.pi_ddot.push_back(step.pi.at(l + k));
          pkt.subfile.rx_set = pkt.pi_dot;
          std::sort(pkt.subfile.rx_set.begin(), pkt.subfile.rx_set.end());
          step.packets.push_back(std::move(pkt));
        }
        s.steps.push_back(std::move(step));
      }
    }
  }
  return s;
}

BigInt expected_step_count(const DerivedParams& p) {
  const int w = p.delta + 1;
  return ipow(BigInt(p.tx_per_dim), p.tx_dims) * ipow(binomial(p.rx_per_dim, w), p.rx_dims) *
         ipow(factorial(w), p.rx_dims) * factorial(p.rx_dims - 1) / w;
}

BigInt expected_total_packets(const DerivedParams& p) {
  return BigInt(p.rx_count()) * expected_packets_per_receiver(p);
}

BigInt expected_packets_per_receiver(const DerivedParams& p) {
  const int d = p.rx_per_dim;
  return ipow(BigInt(p.tx_per_dim), p.tx_dims) * factorial(d - 1) *
         ipow(factorial(d), p.rx_dims - 1) * factorial(p.rx_dims - 1) /
         ipow(factorial(d - p.delta - 1), p.rx_dims);
}

namespace {

constexpr std::size_t kReportSamples = 16;

// Well-formed packets as fixed-width rows of fields (file, tx_set, pi_dot,
// pi_ddot, target), so sorting stays in contiguous memory. rx_set is implied
// by pi_dot. When a row fits in 64 bits it is stored as one order-preserving
// integer key instead.
class PacketTable {
 public:
  explicit PacketTable(const DerivedParams& p)
      : t_tx_(static_cast<std::size_t>(p.tx_dims)),
        t_rx_(static_cast<std::size_t>(p.rx_dims)),
        stride_(2 * t_tx_ + t_rx_ + 1) {
    const auto range = static_cast<std::uint64_t>(
        std::max({p.file_count(), p.tx_count(), p.rx_count(), 2}));
    while ((std::uint64_t{1} << bits_) < range) ++bits_;
    packed_ = bits_ * stride_ <= 64;
  }

  void reserve(std::size_t n) {
    if (packed_)
      keys_.reserve(n);
    else
      rows_.reserve(n * stride_);
  }
  std::size_t size() const noexcept { return packed_ ? keys_.size() : rows_.size() / stride_; }

  // False when the packet does not have the shape this network implies.
  bool add(const PacketId& pk) {
    if (pk.subfile.tx_set.size() != t_tx_ || pk.subfile.rx_set.size() != t_rx_ ||
        pk.pi_dot.size() != t_rx_ || pk.pi_ddot.size() + 1 != t_tx_)
      return false;
    IndexSet dot = pk.pi_dot;
    std::sort(dot.begin(), dot.end());
    if (dot != pk.subfile.rx_set) return false;
    const std::size_t limit = std::size_t{1} << bits_;
    if (pk.subfile.file < 0 || pk.target < 0) return false;
    std::uint64_t key = 0;
    bool fits = true;
    auto put = [&](int v) {
      const auto u = static_cast<std::uint32_t>(v);
      fits = fits && u < limit;
      if (packed_)
        key = (key << bits_) | u;
      else
        rows_.push_back(u);
    };
    put(pk.subfile.file);
    for (int v : pk.subfile.tx_set) put(v);
    for (int v : pk.pi_dot) put(v);
    for (int v : pk.pi_ddot) put(v);
    put(pk.target);
    if (!fits) {
      if (!packed_) rows_.resize(rows_.size() - stride_);
      return false;
    }
    if (packed_) keys_.push_back(key);
    return true;
  }

  void sort() {
    if (packed_) {
      std::sort(keys_.begin(), keys_.end());
      return;
    }
    std::vector<std::uint32_t> order(size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return std::lexicographical_compare(row(a), row(a) + stride_, row(b), row(b) + stride_);
    });
    std::vector<std::uint32_t> sorted;
    sorted.reserve(rows_.size());
    for (auto i : order) sorted.insert(sorted.end(), row(i), row(i) + stride_);
    rows_ = std::move(sorted);
  }

  int compare(std::size_t i, const PacketTable& other, std::size_t j) const {
    if (packed_) return keys_[i] < other.keys_[j] ? -1 : keys_[i] == other.keys_[j] ? 0 : 1;
    const auto* a = row(i);
    const auto* b = other.row(j);
    for (std::size_t k = 0; k < stride_; ++k)
      if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
    return 0;
  }

  PacketId decode(std::size_t i) const {
    std::vector<std::uint32_t> f(stride_);
    if (packed_) {
      std::uint64_t key = keys_[i];
      for (std::size_t k = stride_; k-- > 0;) {
        f[k] = static_cast<std::uint32_t>(key & ((std::uint64_t{1} << bits_) - 1));
        key >>= bits_;
      }
    } else {
      f.assign(row(i), row(i) + stride_);
    }
    std::size_t at = 0;
    auto take = [&](std::size_t n) {
      std::vector<int> v;
      for (std::size_t k = 0; k < n; ++k) v.push_back(static_cast<int>(f[at++]));
      return v;
    };
    PacketId pk;
    pk.subfile.file = static_cast<int>(f[at++]);
    pk.subfile.tx_set = take(t_tx_);
    pk.pi_dot = take(t_rx_);
    pk.pi_ddot = take(t_tx_ - 1);
    pk.target = static_cast<int>(f[at]);
    pk.subfile.rx_set = pk.pi_dot;
    std::sort(pk.subfile.rx_set.begin(), pk.subfile.rx_set.end());
    return pk;
  }

 private:
  const std::uint32_t* row(std::size_t i) const { return rows_.data() + i * stride_; }

  std::size_t t_tx_, t_rx_, stride_;
  std::size_t bits_ = 1;
  bool packed_ = false;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> rows_;
};

template <class T>
void sample(std::vector<T>& into, T value) {
  if (into.size() < kReportSamples) into.push_back(std::move(value));
}

}  // namespace

CoverageReport verify_exact_cover(const Schedule& s, const DemandVector& d, const DerivedParams& p) {
  check_demand(d, p);
  CoverageReport rep;
  rep.steps = s.steps.size();
  rep.expected_total = expected_total_packets(p);
  rep.expected_per_receiver = expected_packets_per_receiver(p);
  rep.delivered_per_receiver.assign(static_cast<std::size_t>(p.rx_count()), 0);

  PacketTable scheduled(p);
  scheduled.reserve(s.packet_count());
  for (const auto& step : s.steps) {
    if (step.packets.size() != static_cast<std::size_t>(p.step_size())) ++rep.malformed_steps;
    for (const auto& pkt : step.packets) {
      ++rep.scheduled_packets;
      if (pkt.target >= 0 && pkt.target < p.rx_count()) ++rep.delivered_per_receiver[pkt.target];
      if (!scheduled.add(pkt)) {
        ++rep.unexpected_count;
        sample(rep.unexpected, pkt);
      }
    }
  }

  PacketTable demanded(p);
  demanded.reserve(static_cast<std::size_t>(rep.expected_total.convert_to<double>()));
  const SubfilePacketizer packetizer(p);
  for (int j = 0; j < p.rx_count(); ++j)
    for (const auto& sub : demanded_subfiles(j, d, p))
      for (const auto& pkt : packetizer.packets(j, sub)) {
        ++rep.demanded_packets;
        demanded.add(pkt);
      }

  // Merge the two sorted lists. Equal neighbours on the scheduled side are
  // duplicates; anything only on one side is missing or unexpected.
  scheduled.sort();
  demanded.sort();
  const std::size_t ns = scheduled.size(), nd = demanded.size();
  std::size_t i = 0, k = 0;
  while (i < ns || k < nd) {
    const int c = i == ns ? 1 : k == nd ? -1 : scheduled.compare(i, demanded, k);
    if (c < 0) {
      ++rep.unexpected_count;
      sample(rep.unexpected, scheduled.decode(i));
      ++i;
    } else if (c > 0) {
      ++rep.missing_count;
      sample(rep.missing, demanded.decode(k));
      ++k;
    } else {
      std::size_t run = 1;
      while (i + run < ns && scheduled.compare(i + run, scheduled, i) == 0) ++run;
      if (run > 1) {
        rep.duplicate_count += run - 1;
        sample(rep.duplicated, scheduled.decode(i));
      }
      i += run;
      ++k;
    }
  }

  bool per_rx_ok = true;
  for (auto n : rep.delivered_per_receiver) per_rx_ok = per_rx_ok && BigInt(n) == rep.expected_per_receiver;
  rep.passed = rep.missing_count == 0 && rep.duplicate_count == 0 && rep.unexpected_count == 0 &&
               rep.malformed_steps == 0 && BigInt(rep.scheduled_packets) == rep.expected_total &&
               BigInt(rep.demanded_packets) == rep.expected_total && per_rx_ok;
  return rep;
}

std::string CoverageReport::to_text() const {
  std::ostringstream os;
  os << "coverage: " << (passed ? "PASS" : "FAIL") << '\n'
     << "steps: " << steps << '\n'
     << "scheduled_packets: " << scheduled_packets << '\n'
     << "demanded_packets: " << demanded_packets << '\n'
     << "expected_total_packets: " << expected_total << '\n'
     << "expected_packets_per_receiver: " << expected_per_receiver << '\n'
     << "delivered_per_receiver:";
  for (auto n : delivered_per_receiver) os << ' ' << n;
  os << '\n'
     << "malformed_steps: " << malformed_steps << '\n'
     << "missing: " << missing_count << '\n'
     << "duplicated: " << duplicate_count << '\n'
     << "unexpected: " << unexpected_count << '\n';
  for (const auto& pk : missing) os << "  missing " << format_packet(pk) << '\n';
  for (const auto& pk : duplicated) os << "  duplicated " << format_packet(pk) << '\n';
  for (const auto& pk : unexpected) os << "  unexpected " << format_packet(pk) << '\n';
  return os.str();
}

ReceiverRole packet_role(const DeliveryStep& step, int offset, int rx) {
  const int len = static_cast<int>(step.pi.size());
  if (offset < 0 || offset >= len) throw InvalidInput("packet offset out of range");
  auto it = std::find(step.pi.order.begin(), step.pi.order.end(), rx);
  if (it == step.pi.order.end())
    throw InvalidInput("receiver " + std::to_string(rx) + " does not take part in this step");
  const int pos = static_cast<int>(it - step.pi.order.begin());
  const int rel = ((pos - offset) % len + len) % len;
  const int t_rx = static_cast<int>(step.rx_family.size());
  if (rel == 0) return ReceiverRole::Desired;
  if (rel <= t_rx) return ReceiverRole::CacheCancel;
  return ReceiverRole::ZeroForced;
}

std::string export_schedule(const Schedule& s) {
  const auto& p = s.params;
  const auto& c = p.config;
  std::ostringstream os;
  os << "# hcb-schedule v1\n"
     << "# K_T=" << c.tx_count << " K_R=" << c.rx_count << " M_T=" << to_string(c.tx_memory)
     << " M_R=" << to_string(c.rx_memory) << " N=" << c.file_count << " t_T=" << p.tx_dims
     << " t_R=" << p.rx_dims << " D_T=" << p.tx_per_dim << " D_R=" << p.rx_per_dim
     << " delta=" << p.delta << '\n'
     << "# demand=" << format_set(s.demand.files) << '\n'
     << "# steps=" << s.steps.size() << " packets=" << s.packet_count() << '\n';
  for (std::size_t k = 0; k < s.steps.size(); ++k) {
    const auto& st = s.steps[k];
    os << "step " << k << " base_tx=" << format_set(st.base_tx) << " rx_family=";
    for (const auto& g : st.rx_family) os << '{' << format_set(g) << '}';
    os << " pi=" << format_set(st.pi.order) << " active_tx=" << format_set(st.active_tx) << '\n';
    for (std::size_t l = 0; l < st.packets.size(); ++l)
      os << "  packet " << l << ' ' << format_packet(st.packets[l]) << '\n';
  }
  return os.str();
}

}  // namespace hcb
