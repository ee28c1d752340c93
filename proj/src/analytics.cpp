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

#include "analytics.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "error.hpp"
#include "scheduler.hpp"

namespace hcb {

BigInt delta_hcb(int rx_dims, int rx_per_dim, int delta) {
  return binomial(rx_per_dim - 2, delta - 1) * ipow(binomial(rx_per_dim - 1, delta), rx_dims - 1) *
         ipow(factorial(delta), rx_dims) / delta * factorial(rx_dims - 1);
}

BigInt delta_nma(std::int64_t rx_count, int rx_dims, int tx_dims) {
  return binomial(rx_count - rx_dims - 1, tx_dims - 1) * factorial(tx_dims - 1) *
         factorial(rx_dims);
}

BigInt hypercube_subpacketization(int tx_dims, int tx_per_dim, int rx_dims, int rx_per_dim) {
  const int delta = tx_dims / rx_dims;
  return ipow(BigInt(tx_per_dim), tx_dims) * ipow(BigInt(rx_per_dim), rx_dims) *
         delta_hcb(rx_dims, rx_per_dim, delta);
}

SubpacketizationReport subpacketization(const DerivedParams& p) {
  SubpacketizationReport r;
  r.subfiles_hcb = ipow(BigInt(p.tx_per_dim), p.tx_dims) * ipow(BigInt(p.rx_per_dim), p.rx_dims);
  r.subfiles_nma = binomial(p.tx_count(), p.tx_dims) * binomial(p.rx_count(), p.rx_dims);
  r.delta_hcb = delta_hcb(p.rx_dims, p.rx_per_dim, p.delta);
  r.delta_nma = delta_nma(p.rx_count(), p.rx_dims, p.tx_dims);
  r.f_hcb = r.subfiles_hcb * r.delta_hcb;
  r.f_nma = r.subfiles_nma * r.delta_nma;
  r.gap = Rational(r.f_hcb, r.f_nma);
  r.steps = expected_step_count(p);
  r.packets_total = expected_total_packets(p);
  r.dof = p.step_size();
  return r;
}

namespace {

double log_big(const BigInt& z) {
  // cpp_int -> double is exact enough for the magnitudes used here.
  return std::log(z.convert_to<double>());
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

GapBoundReport gap_analysis(const DerivedParams& p) {
  const auto sp = subpacketization(p);
  GapBoundReport g;
  g.gap = sp.gap;
  g.gap_at_most_one = g.gap <= 1;
  g.gap_below_one = g.gap < 1;

  const std::int64_t d = p.rx_per_dim;
  const std::int64_t t = p.rx_dims;
  const std::int64_t delta = p.delta;
  BigInt den = 1;
  for (std::int64_t i = 0; i < delta; ++i) den *= d - 1 - i;
  g.lambda_product = 1;
  for (std::int64_t k = 0; k < t; ++k) {
    BigInt num = 1;
    for (std::int64_t i = k * delta; i <= (k + 1) * delta - 1; ++i) num *= (d - 1) * t - i;
    g.lambda.emplace_back(num, den);
    g.lambda_product *= g.lambda.back();
  }
  g.nma_over_hcb = Rational(sp.delta_nma, sp.delta_hcb);
  g.lambda_product_matches = g.lambda_product == g.nma_over_hcb;
  g.lambda_strictly_decreasing = true;
  for (std::size_t k = 1; k < g.lambda.size(); ++k)
    g.lambda_strictly_decreasing = g.lambda_strictly_decreasing && g.lambda[k] < g.lambda[k - 1];
  g.lambda_last_at_least_one = g.lambda.back() >= 1;

  g.log_gap = log_big(sp.f_hcb) - log_big(sp.f_nma);
  g.symmetric = p.tx_per_dim == p.rx_per_dim;
  if (!g.symmetric) return g;

  const double dd = static_cast<double>(d);
  const double dl = static_cast<double>(delta);
  const double tt = static_cast<double>(t);
  const double e = std::numbers::e;
  const double pi = std::numbers::pi;
  const int slack = static_cast<int>(d - delta - 1);  // d - delta - 1 >= 0

  const double falling = std::exp(log_factorial(static_cast<int>(d - 1)) - log_factorial(slack));
  const double stirling = std::sqrt((dd - 1) / dl) * std::pow(2 * pi / (dd - 1), 1.5);
  const double ratio_d2 = std::exp(log_factorial(static_cast<int>(d - 2)) - log_factorial(slack));
  const double c3 = slack == 0 ? 1.0 : std::pow((dd - 1) / slack, static_cast<double>(slack));
  const double c2 = std::pow(dd / (dd - 1), (dd - 1) * (dl + 1));

  // Compact form: C1 folds C2, C3 and the e^d/(d-1)^d factor together.
  g.compact_c0 = ratio_d2 * std::pow(e, 6) / (stirling * falling);
  g.compact_c1 = falling * std::pow(e / (dd - 1), dl) / c2 / c3;

  // Expanded form keeps every constant separate.
  g.expanded_c0 = ratio_d2 / (stirling * std::exp(-4.0));
  g.expanded_c1 = falling;
  g.expanded_c2 = c2;
  g.expanded_c3 = c3;
  g.expanded_c4 = g.expanded_c1 * std::pow(e, dl) / (c2 * c3 * std::pow(dd - 1, dl));

  const double tail = -((dl - 1) * tt - 1) * std::log(tt);
  const double log_thm = std::log(g.compact_c0) + tt * (std::log(g.compact_c1) - std::log(tt)) + tail;
  const double log_app = std::log(g.expanded_c0 * e * e / g.expanded_c1) +
                         tt * (std::log(g.expanded_c4) - std::log(tt)) + tail;
  g.compact_bound = std::exp(log_thm);
  g.expanded_bound = std::exp(log_app);
  g.compact_bound_holds = g.log_gap <= log_thm;
  g.expanded_bound_holds = g.log_gap <= log_app;
  g.expanded_applicable = tt >= g.expanded_c4;
  return g;
}

const char* plan_kind_name(MemorySharePlan::Kind k) noexcept {
  switch (k) {
    case MemorySharePlan::Kind::Direct: return "direct";
    case MemorySharePlan::Kind::NonIntegerCaching: return "non-integer-caching";
    case MemorySharePlan::Kind::DeltaBelowOne: return "delta-below-one";
    case MemorySharePlan::Kind::FractionalDelta: return "fractional-delta";
  }
  return "unknown";
}

namespace {

Rational floor_q(const Rational& q) {
  BigInt n = boost::multiprecision::numerator(q);
  BigInt d = boost::multiprecision::denominator(q);
  BigInt f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return Rational(f);
}

// Fills delta, dof, the hypercube subpacketization when the partition has an
// integral hypercube realization, and a note otherwise.
SharePartition make_partition(const Rational& file_fraction, const Rational& tx_caching,
                              const Rational& rx_caching, std::int64_t tx_count,
                              std::int64_t rx_count, const Rational& tx_total,
                              const Rational& rx_total) {
  SharePartition part;
  part.file_fraction = file_fraction;
  part.tx_caching = tx_caching;
  part.rx_caching = rx_caching;
  part.tx_memory_fraction = file_fraction * tx_caching / tx_total;
  part.rx_memory_fraction = rx_total == 0 ? Rational(0) : file_fraction * rx_caching / rx_total;
  part.dof = tx_caching + rx_caching;
  if (rx_caching == 0) {
    part.external_scheme = true;
    part.note = "no receiver caching in this partition; zero-forcing only";
    return part;
  }
  part.delta = tx_caching / rx_caching;
  const Rational d_tx = Rational(tx_count) / tx_caching;
  const Rational d_rx = Rational(rx_count) / rx_caching;
  if (!is_integer(part.delta)) {
    part.note = "fractional delta; split again by the fractional-delta planner";
  } else if (!is_integer(d_tx) || !is_integer(d_rx)) {
    part.note = "K/t is not an integer; hypercube placement not realizable as-is";
  } else if (d_rx < part.delta + 1) {
    part.note = "D_R < delta + 1";
  } else {
    part.subpacketization = hypercube_subpacketization(
        tx_caching.convert_to<int>(), d_tx.convert_to<int>(), rx_caching.convert_to<int>(),
        d_rx.convert_to<int>());
  }
  return part;
}

void finish(MemorySharePlan& plan) {
  plan.combined_dof = 0;
  BigInt f = 0;
  bool have_f = true;
  for (const auto& part : plan.partitions) {
    plan.combined_dof += part.file_fraction * part.dof;
    if (part.subpacketization)
      f += *part.subpacketization;
    else
      have_f = false;
  }
  if (have_f) plan.combined_subpacketization = f;
}

}  // namespace

MemorySharePlan plan_memory_sharing(const Rational& t_tx, const Rational& t_rx,
                                    std::int64_t tx_count, std::int64_t rx_count) {
  if (t_tx < 1)
    throw ValidationError({{Violation::LibraryNotCovered,
                            "t_T = " + to_string(t_tx) + " < 1: the library is not fully cached"}});
  if (t_rx < 0) throw InvalidInput("t_R must be non-negative");

  MemorySharePlan plan;
  plan.tx_caching = t_tx;
  plan.rx_caching = t_rx;
  auto add = [&](const Rational& frac, const Rational& a, const Rational& b) {
    if (frac == 0) return;
    plan.partitions.push_back(make_partition(frac, a, b, tx_count, rx_count, t_tx, t_rx));
  };

  if (!is_integer(t_tx) || !is_integer(t_rx)) {
    // Convex combination of lattice points around (t_T, t_R), using the
    // triangle of the unit square that contains it.
    plan.kind = MemorySharePlan::Kind::NonIntegerCaching;
    const Rational a = floor_q(t_tx), c = floor_q(t_rx);
    const Rational x = t_tx - a, y = t_rx - c;
    if (x >= y) {
      add(1 - x, a, c);
      add(x - y, a + 1, c);
      add(y, a + 1, c + 1);
    } else {
      add(1 - y, a, c);
      add(y - x, a, c + 1);
      add(x, a + 1, c + 1);
    }
    plan.weight = plan.partitions.front().file_fraction;
  } else if (t_rx == 0 || is_integer(t_tx / t_rx)) {
    plan.kind = MemorySharePlan::Kind::Direct;
    add(1, t_tx, t_rx);
    plan.weight = 1;
  } else if (t_tx < t_rx) {
    // t_T' = 1 on a shared-link partition, t_T'' = t_R with delta'' = 1.
    plan.kind = MemorySharePlan::Kind::DeltaBelowOne;
    const Rational lo = 1, hi = t_rx;
    const Rational p = (hi - t_tx) / (hi - lo);
    plan.weight = p;
    if (p != 0) {
      SharePartition shared = make_partition(p, lo, t_rx, tx_count, rx_count, t_tx, t_rx);
      shared.external_scheme = true;
      shared.subpacketization.reset();
      shared.note = "shared-link coded caching partition (external scheme, F not computed)";
      plan.partitions.push_back(std::move(shared));
    }
    add(1 - p, hi, t_rx);
  } else {
    plan.kind = MemorySharePlan::Kind::FractionalDelta;
    const Rational q = floor_q(t_tx / t_rx);
    const Rational lo = q * t_rx, hi = (q + 1) * t_rx;
    const Rational p = (hi - t_tx) / (hi - lo);
    plan.weight = p;
    add(p, lo, t_rx);
    add(1 - p, hi, t_rx);
  }
  finish(plan);
  return plan;
}

MemorySharePlan plan_memory_sharing(const NetworkConfig& cfg) {
  if (cfg.tx_count <= 0 || cfg.rx_count <= 0 || cfg.file_count <= 0 || cfg.tx_memory <= 0 ||
      cfg.rx_memory < 0)
    throw ValidationError({{Violation::NonPositiveParameter,
                            "K_T, K_R, M_T and N must be positive, M_R non-negative"}});
  return plan_memory_sharing(cfg.tx_caching(), cfg.rx_caching(), cfg.tx_count, cfg.rx_count);
}

std::string MemorySharePlan::to_text() const {
  std::ostringstream os;
  os << "memory_sharing: " << plan_kind_name(kind) << '\n'
     << "t_T: " << to_string(tx_caching) << '\n'
     << "t_R: " << to_string(rx_caching) << '\n'
     << "weight_p: " << to_string(weight) << '\n';
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    const auto& pt = partitions[i];
    os << "partition " << i << ": file_fraction=" << to_string(pt.file_fraction)
       << " tx_memory_fraction=" << to_string(pt.tx_memory_fraction)
       << " rx_memory_fraction=" << to_string(pt.rx_memory_fraction)
       << " t_T=" << to_string(pt.tx_caching) << " t_R=" << to_string(pt.rx_caching)
       << " delta=" << to_string(pt.delta) << " dof=" << to_string(pt.dof)
       << " F=" << (pt.subpacketization ? pt.subpacketization->str() : std::string("n/a"));
    if (pt.external_scheme) os << " external";
    if (!pt.note.empty()) os << " (" << pt.note << ')';
    os << '\n';
  }
  os << "combined_dof: " << to_string(combined_dof) << '\n'
     << "combined_F: "
     << (combined_subpacketization ? combined_subpacketization->str() : std::string("n/a")) << '\n';
  return os.str();
}

CapResult cap_excess_memory(const NetworkConfig& cfg) {
  CapResult out;
  out.config = cfg;
  const Rational t_tx = cfg.tx_caching();
  const Rational t_rx = cfg.rx_caching();
  if (t_tx + t_rx <= cfg.rx_count) {
    out.integral = validate_config(cfg).ok();
    out.note = "t_T + t_R <= K_R; memories unchanged";
    return out;
  }
  out.changed = true;

  // Keep as much transmitter memory as possible: smallest D_T' first, then
  // the largest receiver memory that lands exactly on K_R.
  const Rational d_tx = Rational(cfg.file_count) / cfg.tx_memory;
  const Rational d_rx = Rational(cfg.file_count) / cfg.rx_memory;
  for (std::int64_t dt = 1; dt <= cfg.tx_count; ++dt) {
    if (dt < d_tx || cfg.tx_count % dt != 0) continue;
    const std::int64_t tt = cfg.tx_count / dt;
    const std::int64_t tr = cfg.rx_count - tt;
    if (tr < 1 || cfg.rx_count % tr != 0) continue;
    const std::int64_t dr = cfg.rx_count / tr;
    if (dr < d_rx) continue;
    NetworkConfig c = cfg;
    c.tx_memory = Rational(cfg.file_count, dt);
    c.rx_memory = Rational(cfg.file_count, dr);
    if (validate_config(c).ok()) {
      out.config = c;
      out.integral = true;
      out.note = "reduced to M_T'=" + to_string(c.tx_memory) + ", M_R'=" + to_string(c.rx_memory);
      return out;
    }
  }

  NetworkConfig c = cfg;
  const Rational rx_needed = Rational(cfg.file_count * cfg.rx_count) - Rational(cfg.tx_count) * cfg.tx_memory;
  if (rx_needed > 0) {
    c.rx_memory = rx_needed / cfg.rx_count;
  } else {
    c.rx_memory = std::min(cfg.rx_memory, Rational(cfg.file_count, cfg.rx_count));
    c.tx_memory = (Rational(cfg.file_count * cfg.rx_count) - Rational(cfg.rx_count) * c.rx_memory) /
                  cfg.tx_count;
  }
  out.config = c;
  out.note = "no integral reduction; M_T'=" + to_string(c.tx_memory) + ", M_R'=" +
             to_string(c.rx_memory) + " routed to memory sharing";
  try {
    out.plan = plan_memory_sharing(c);
  } catch (const Error& e) {
    out.note += std::string("; planner failed: ") + e.what();
  }
  return out;
}

NetworkConfig symmetric_config(int d, int t, int delta) {
  NetworkConfig c;
  c.rx_count = static_cast<std::int64_t>(d) * t;
  c.tx_count = static_cast<std::int64_t>(delta) * d * t;
  c.file_count = d;
  c.tx_memory = 1;
  c.rx_memory = 1;
  return c;
}

namespace {

std::vector<int> parse_values(const std::string& text, const std::string& key) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw ParseError("grid: bad value '" + s + "' for " + key);
    }
    if (used != s.size()) throw ParseError("grid: bad value '" + s + "' for " + key);
    return v;
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (auto colon = item.find(':'); colon != std::string::npos) {
      const int lo = to_int(item.substr(0, colon));
      const int hi = to_int(item.substr(colon + 1));
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(to_int(item));
    }
  }
  return out;
}

}  // namespace

GridSpec parse_grid_spec(const std::string& spec) {
  GridSpec g;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    std::string clean;
    for (char ch : part)
      if (!std::isspace(static_cast<unsigned char>(ch))) clean += ch;
    if (clean.empty()) continue;
    const auto eq = clean.find('=');
    if (eq == std::string::npos) throw ParseError("grid: expected key=values, got '" + clean + "'");
    const std::string key = clean.substr(0, eq);
    auto values = parse_values(clean.substr(eq + 1), key);
    if (key == "d") {
      g.d = std::move(values);
    } else if (key == "t") {
      g.t = std::move(values);
    } else if (key == "delta") {
      g.delta = std::move(values);
    } else {
      throw ParseError("grid: unknown key '" + key + "' (expected d, t, delta)");
    }
  }
  return g;
}

std::vector<NetworkConfig> expand_grid(const GridSpec& g) {
  std::vector<NetworkConfig> out;
  for (int delta : g.delta)
    for (int d : g.d)
      for (int t : g.t)
        if (d >= 1 && t >= 1 && delta >= 1) out.push_back(symmetric_config(d, t, delta));
        else {
          NetworkConfig bad;  // kept so the sweep reports it as skipped
          bad.tx_count = static_cast<std::int64_t>(delta) * d * t;
          bad.rx_count = static_cast<std::int64_t>(d) * t;
          bad.file_count = d;
          bad.tx_memory = bad.rx_memory = 1;
          out.push_back(bad);
        }
  return out;
}

std::string sweep_csv_header() {
  return "K_T,K_R,M_T,M_R,N,t_T,t_R,delta,D_T,D_R,delta_hcb,delta_nma,f_hcb,f_nma,G,steps,dof,"
         "lambda_min,bound_compact,bound_expanded\n";
}

SweepResult run_sweep(const std::vector<NetworkConfig>& configs) {
  SweepResult out;
  std::ostringstream os;
  os << sweep_csv_header();
  os << std::setprecision(17);
  for (const auto& cfg : configs) {
    const auto v = validate_config(cfg);
    if (!v.ok()) {
      std::ostringstream why;
      why << "K_T=" << cfg.tx_count << " K_R=" << cfg.rx_count << " M_T=" << to_string(cfg.tx_memory)
          << " M_R=" << to_string(cfg.rx_memory) << " N=" << cfg.file_count << ":";
      for (const auto& r : v.violations) why << ' ' << violation_name(r.code);
      out.skipped.push_back(why.str());
      continue;
    }
    const auto& p = v.params;
    const auto sp = subpacketization(p);
    const auto gb = gap_analysis(p);
    Rational lambda_min = gb.lambda.front();
    for (const auto& l : gb.lambda) lambda_min = std::min(lambda_min, l);
    os << cfg.tx_count << ',' << cfg.rx_count << ',' << to_string(cfg.tx_memory) << ','
       << to_string(cfg.rx_memory) << ',' << cfg.file_count << ',' << p.tx_dims << ','
       << p.rx_dims << ',' << p.delta << ',' << p.tx_per_dim << ',' << p.rx_per_dim << ','
       << sp.delta_hcb << ',' << sp.delta_nma << ',' << sp.f_hcb << ',' << sp.f_nma << ','
       << to_double(sp.gap) << ',' << sp.steps << ',' << sp.dof << ',' << to_double(lambda_min)
       << ',';
    if (gb.compact_bound) os << *gb.compact_bound;
    os << ',';
    if (gb.expanded_bound) os << *gb.expanded_bound;
    os << '\n';
    ++out.rows;
  }
  out.csv = os.str();
  return out;
}

std::string analysis_text(const DerivedParams& p, const SubpacketizationReport& s,
                          const GapBoundReport& g) {
  const auto& c = p.config;
  std::ostringstream os;
  os << std::setprecision(10);
  os << "K_T=" << c.tx_count << " K_R=" << c.rx_count << " M_T=" << to_string(c.tx_memory)
     << " M_R=" << to_string(c.rx_memory) << " N=" << c.file_count << '\n'
     << "t_T=" << p.tx_dims << " t_R=" << p.rx_dims << " D_T=" << p.tx_per_dim
     << " D_R=" << p.rx_per_dim << " delta=" << p.delta << '\n'
     << "DoF=" << s.dof << '\n'
     << "subfiles_per_file_HCB=" << s.subfiles_hcb << '\n'
     << "subfiles_per_file_NMA=" << s.subfiles_nma << '\n'
     << "Delta_HCB=" << s.delta_hcb << '\n'
     << "Delta_NMA=" << s.delta_nma << '\n'
     << "F_HCB=" << s.f_hcb << '\n'
     << "F_NMA=" << s.f_nma << '\n'
     << "G=" << to_string(s.gap) << " (" << to_double(s.gap) << ")\n"
     << "steps=" << s.steps << '\n'
     << "packets_total=" << s.packets_total << '\n'
     << "lambda=";
  for (std::size_t k = 0; k < g.lambda.size(); ++k) os << (k ? "," : "") << to_string(g.lambda[k]);
  os << '\n'
     << "Delta_NMA/Delta_HCB=" << to_string(g.nma_over_hcb)
     << " product_of_lambda_matches=" << (g.lambda_product_matches ? "yes" : "no") << '\n'
     << "G<=1: " << (g.gap_at_most_one ? "yes" : "no") << "  G<1: " << (g.gap_below_one ? "yes" : "no")
     << '\n';
  if (g.symmetric) {
    os << "bound_compact=" << *g.compact_bound << " holds=" << (g.compact_bound_holds ? "yes" : "no")
       << " (C0=" << g.compact_c0 << ", C1=" << g.compact_c1 << ")\n"
       << "bound_expanded=" << *g.expanded_bound
       << " holds=" << (g.expanded_bound_holds ? "yes" : "no") << " (C4=" << g.expanded_c4
       << ", t>=C4: " << (g.expanded_applicable ? "yes" : "no") << ")\n";
  } else {
    os << "bounds: n/a (D_T != D_R)\n";
  }
  return os.str();
}

const char* route_name(AnalyzeResult::Route r) noexcept {
  switch (r) {
    case AnalyzeResult::Route::Direct: return "direct";
    case AnalyzeResult::Route::MemorySharing: return "memory-sharing";
    case AnalyzeResult::Route::Capped: return "memory-cap";
  }
  return "unknown";
}

AnalyzeResult analyze_network(const NetworkConfig& cfg) {
  const auto v = validate_config(cfg);
  AnalyzeResult out;
  if (v.ok()) {
    const auto sp = subpacketization(v.params);
    out.text = analysis_text(v.params, sp, gap_analysis(v.params));
    out.csv = run_sweep({cfg}).csv;
    return out;
  }
  out.violations = v.violations;
  out.csv = sweep_csv_header();
  if (v.has(Violation::NonPositiveParameter) || v.has(Violation::LibraryNotCovered))
    throw ValidationError(v.violations);

  std::ostringstream os;
  os << "violations:";
  for (const auto& r : v.violations) os << ' ' << violation_name(r.code);
  os << '\n';
  if (v.has(Violation::DofExceedsReceivers)) {
    out.route = AnalyzeResult::Route::Capped;
    const auto cap = cap_excess_memory(cfg);
    os << "memory_cap: " << cap.note << '\n';
    if (cap.integral) {
      const auto p = derive_params(cap.config);
      os << analysis_text(p, subpacketization(p), gap_analysis(p));
    } else if (cap.plan) {
      os << cap.plan->to_text();
    }
    out.text = os.str();
    return out;
  }
  if (v.has(Violation::NonIntegerTxCaching) || v.has(Violation::NonIntegerRxCaching) ||
      v.has(Violation::NonIntegerDelta)) {
    out.route = AnalyzeResult::Route::MemorySharing;
    os << plan_memory_sharing(cfg).to_text();
    out.text = os.str();
    return out;
  }
  throw ValidationError(v.violations);
}

}  // namespace hcb
