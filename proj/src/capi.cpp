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

#include "hcb/hcb.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "analytics.hpp"
#include "error.hpp"
#include "phy.hpp"
#include "placement.hpp"
#include "run_config.hpp"
#include "scheduler.hpp"

struct hcb_run_config {
  hcb::RunConfig rc;
};

struct hcb_network {
  hcb::NetworkConfig cfg;
  hcb::ConfigValidation validation;
};

struct hcb_schedule {
  hcb::Schedule schedule;
};

struct hcb_channel {
  hcb::ChannelMatrix h;
};

namespace {

thread_local std::string last_error;

hcb_status fail(hcb_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

hcb_status status_of(hcb::ErrorKind k) {
  switch (k) {
    case hcb::ErrorKind::InvalidInput: return HCB_INVALID_ARGUMENT;
    case hcb::ErrorKind::ResourceLimit: return HCB_RESOURCE_LIMIT;
    case hcb::ErrorKind::Validation: return HCB_VALIDATION;
    case hcb::ErrorKind::Solver: return HCB_SOLVER;
    case hcb::ErrorKind::Parse: return HCB_PARSE;
    case hcb::ErrorKind::Io: return HCB_IO;
  }
  return HCB_INTERNAL;
}

// Runs f, mapping exceptions to status codes and the thread's last error.
template <class F>
hcb_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const hcb::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HCB_RESOURCE_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(HCB_INTERNAL, e.what());
  } catch (...) {
    return fail(HCB_INTERNAL, "unknown error");
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

#define HCB_REQUIRE(cond)                                       \
  do {                                                          \
    if (!(cond)) return fail(HCB_INVALID_ARGUMENT, #cond " is required"); \
  } while (0)

const hcb::DerivedParams& valid_params(const hcb_network* net) {
  if (!net->validation.ok()) throw hcb::ValidationError(net->validation.violations);
  return net->validation.params;
}

std::string join_lines(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += s + "\n";
  return out;
}

}  // namespace

extern "C" {

const char* hcb_last_error(void) { return last_error.c_str(); }

const char* hcb_status_name(hcb_status s) {
  switch (s) {
    case HCB_OK: return "ok";
    case HCB_INVALID_ARGUMENT: return "invalid-argument";
    case HCB_VALIDATION: return "validation";
    case HCB_RESOURCE_LIMIT: return "resource-limit";
    case HCB_SOLVER: return "solver";
    case HCB_PARSE: return "parse";
    case HCB_IO: return "io";
    case HCB_COVERAGE: return "coverage";
    case HCB_DECODE: return "decode";
    case HCB_INTERNAL: return "internal";
  }
  return "unknown";
}

void hcb_string_free(char* s) { std::free(s); }

hcb_status hcb_run_config_load(const char* path, hcb_run_config** out) {
  HCB_REQUIRE(path && out);
  return guarded([&] {
    *out = new hcb_run_config{hcb::load_run_config(path)};
    return HCB_OK;
  });
}

hcb_status hcb_run_config_parse(const char* text, hcb_run_config** out) {
  HCB_REQUIRE(text && out);
  return guarded([&] {
    *out = new hcb_run_config{hcb::parse_run_config(text)};
    return HCB_OK;
  });
}

void hcb_run_config_free(hcb_run_config* cfg) { delete cfg; }

hcb_status hcb_run_config_set_channel_seed(hcb_run_config* cfg, uint64_t seed) {
  HCB_REQUIRE(cfg);
  cfg->rc.channel.seed = seed;
  return HCB_OK;
}

hcb_status hcb_run_config_set_noise(hcb_run_config* cfg, double variance) {
  HCB_REQUIRE(cfg);
  if (!(variance >= 0)) return fail(HCB_INVALID_ARGUMENT, "noise variance must be non-negative");
  cfg->rc.noise_variance = variance;
  return HCB_OK;
}

hcb_status hcb_run_config_set_tolerance(hcb_run_config* cfg, double residual) {
  HCB_REQUIRE(cfg);
  if (!(residual >= 0)) return fail(HCB_INVALID_ARGUMENT, "tolerance must be non-negative");
  cfg->rc.tolerances.residual = residual;
  return HCB_OK;
}

hcb_status hcb_run_config_set_output_dir(hcb_run_config* cfg, const char* dir) {
  HCB_REQUIRE(cfg && dir);
  cfg->rc.output_dir = dir;
  return HCB_OK;
}

hcb_status hcb_run_config_output_dir(const hcb_run_config* cfg, char** out) {
  HCB_REQUIRE(cfg && out);
  return guarded([&] {
    put(out, cfg->rc.output_dir);
    return HCB_OK;
  });
}

hcb_status hcb_run_config_channel(const hcb_run_config* cfg, uint64_t* seed, int* retries,
                                  hcb_channel_model* model) {
  HCB_REQUIRE(cfg);
  if (seed) *seed = cfg->rc.channel.seed;
  if (retries) *retries = cfg->rc.channel.retries;
  if (model)
    *model = cfg->rc.channel.model == hcb::ChannelModel::RankOne ? HCB_CHANNEL_RANK_ONE
                                                                 : HCB_CHANNEL_GAUSSIAN;
  return HCB_OK;
}

hcb_status hcb_run_config_noise(const hcb_run_config* cfg, double* variance,
                                uint64_t* symbol_seed) {
  HCB_REQUIRE(cfg);
  if (variance) *variance = cfg->rc.noise_variance;
  if (symbol_seed) *symbol_seed = cfg->rc.symbol_seed;
  return HCB_OK;
}

hcb_status hcb_run_config_tolerances(const hcb_run_config* cfg, double* residual,
                                     double* max_condition) {
  HCB_REQUIRE(cfg);
  if (residual) *residual = cfg->rc.tolerances.residual;
  if (max_condition) *max_condition = cfg->rc.tolerances.max_condition;
  return HCB_OK;
}

int hcb_run_config_has_sweep(const hcb_run_config* cfg) {
  return cfg && (cfg->rc.sweep_grid || !cfg->rc.sweep_configs.empty()) ? 1 : 0;
}

hcb_status hcb_network_create(int64_t K_T, int64_t K_R, const char* M_T, const char* M_R,
                              int64_t N, hcb_network** out) {
  HCB_REQUIRE(M_T && M_R && out);
  return guarded([&] {
    hcb::NetworkConfig c;
    c.tx_count = K_T;
    c.rx_count = K_R;
    c.tx_memory = hcb::parse_rational(M_T);
    c.rx_memory = hcb::parse_rational(M_R);
    c.file_count = N;
    *out = new hcb_network{c, hcb::validate_config(c)};
    return HCB_OK;
  });
}

hcb_status hcb_network_from_config(const hcb_run_config* cfg, hcb_network** out) {
  HCB_REQUIRE(cfg && out);
  return guarded([&] {
    const auto& c = cfg->rc.require_network();
    *out = new hcb_network{c, hcb::validate_config(c)};
    return HCB_OK;
  });
}

void hcb_network_free(hcb_network* net) { delete net; }

int hcb_network_is_valid(const hcb_network* net) {
  return net && net->validation.ok() ? 1 : 0;
}

size_t hcb_network_violation_count(const hcb_network* net) {
  return net ? net->validation.violations.size() : 0;
}

int hcb_network_violation_code(const hcb_network* net, size_t i) {
  if (!net || i >= net->validation.violations.size()) return 0;
  return static_cast<int>(net->validation.violations[i].code);
}

hcb_status hcb_network_violation_message(const hcb_network* net, size_t i, char** out) {
  HCB_REQUIRE(net && out);
  if (i >= net->validation.violations.size())
    return fail(HCB_INVALID_ARGUMENT, "violation index out of range");
  return guarded([&] {
    const auto& v = net->validation.violations[i];
    put(out, std::string(hcb::violation_name(v.code)) + ": " + v.message);
    return HCB_OK;
  });
}

hcb_status hcb_network_params(const hcb_network* net, hcb_params* out) {
  HCB_REQUIRE(net && out);
  return guarded([&] {
    const auto& p = valid_params(net);
    *out = hcb_params{p.tx_dims,      p.rx_dims,      p.tx_per_dim,    p.rx_per_dim,
                      p.delta,        p.tx_count(),   p.rx_count(),    p.file_count()};
    return HCB_OK;
  });
}

hcb_status hcb_analyze(const hcb_network* net, char** report, char** csv, hcb_route* route) {
  HCB_REQUIRE(net);
  return guarded([&] {
    const auto r = hcb::analyze_network(net->cfg);
    put(report, r.text);
    put(csv, r.csv);
    if (route) *route = static_cast<hcb_route>(static_cast<int>(r.route));
    return HCB_OK;
  });
}

hcb_status hcb_sweep_grid(const char* grid, char** csv, char** log) {
  HCB_REQUIRE(grid && csv);
  return guarded([&] {
    const auto r = hcb::run_sweep(hcb::expand_grid(hcb::parse_grid_spec(grid)));
    put(csv, r.csv);
    put(log, join_lines(r.skipped));
    return HCB_OK;
  });
}

hcb_status hcb_sweep_config(const hcb_run_config* cfg, char** csv, char** log) {
  HCB_REQUIRE(cfg && csv);
  return guarded([&] {
    std::vector<hcb::NetworkConfig> configs;
    if (cfg->rc.sweep_grid) configs = hcb::expand_grid(*cfg->rc.sweep_grid);
    configs.insert(configs.end(), cfg->rc.sweep_configs.begin(), cfg->rc.sweep_configs.end());
    const auto r = hcb::run_sweep(configs);
    put(csv, r.csv);
    put(log, join_lines(r.skipped));
    return HCB_OK;
  });
}

hcb_status hcb_schedule_build(const hcb_network* net, const int* demand, size_t len,
                              hcb_schedule** out) {
  HCB_REQUIRE(net && out && (demand || len == 0));
  return guarded([&] {
    const auto& p = valid_params(net);
    hcb::DemandVector d;
    d.files.assign(demand, demand + len);
    *out = new hcb_schedule{hcb::build_schedule(d, p)};
    return HCB_OK;
  });
}

hcb_status hcb_schedule_build_from_config(const hcb_run_config* cfg, hcb_schedule** out) {
  HCB_REQUIRE(cfg && out);
  return guarded([&] {
    const auto p = hcb::derive_params(cfg->rc.require_network());
    *out = new hcb_schedule{hcb::build_schedule(cfg->rc.demand.resolve(p), p)};
    return HCB_OK;
  });
}

void hcb_schedule_free(hcb_schedule* s) { delete s; }

size_t hcb_schedule_step_count(const hcb_schedule* s) { return s ? s->schedule.steps.size() : 0; }

size_t hcb_schedule_packet_count(const hcb_schedule* s) {
  return s ? s->schedule.packet_count() : 0;
}

hcb_status hcb_schedule_export(const hcb_schedule* s, char** out) {
  HCB_REQUIRE(s && out);
  return guarded([&] {
    put(out, hcb::export_schedule(s->schedule));
    return HCB_OK;
  });
}

hcb_status hcb_schedule_verify(const hcb_schedule* s, char** report) {
  HCB_REQUIRE(s);
  return guarded([&] {
    const auto r = hcb::verify_exact_cover(s->schedule, s->schedule.demand, s->schedule.params);
    put(report, r.to_text());
    if (!r.passed) return fail(HCB_COVERAGE, "schedule does not cover every demanded packet exactly once");
    return HCB_OK;
  });
}

hcb_status hcb_channel_sample(const hcb_network* net, uint64_t seed, hcb_channel_model model,
                              hcb_channel** out) {
  HCB_REQUIRE(net && out);
  return guarded([&] {
    const auto& p = valid_params(net);
    hcb::ChannelSettings c;
    c.model = model == HCB_CHANNEL_RANK_ONE ? hcb::ChannelModel::RankOne
                                            : hcb::ChannelModel::Gaussian;
    *out = new hcb_channel{hcb::sample_configured_channel(c, p, seed)};
    return HCB_OK;
  });
}

void hcb_channel_free(hcb_channel* h) { delete h; }

hcb_status hcb_channel_set_gain(hcb_channel* h, int rx, int tx, double re, double im) {
  HCB_REQUIRE(h);
  if (rx < 0 || rx >= h->h.rx_count() || tx < 0 || tx >= h->h.tx_count())
    return fail(HCB_INVALID_ARGUMENT, "gain index out of range");
  h->h.gains(rx, tx) = hcb::Complex(re, im);
  return HCB_OK;
}

hcb_status hcb_channel_gain(const hcb_channel* h, int rx, int tx, double* re, double* im) {
  HCB_REQUIRE(h && re && im);
  if (rx < 0 || rx >= h->h.rx_count() || tx < 0 || tx >= h->h.tx_count())
    return fail(HCB_INVALID_ARGUMENT, "gain index out of range");
  *re = h->h.gains(rx, tx).real();
  *im = h->h.gains(rx, tx).imag();
  return HCB_OK;
}

hcb_status hcb_simulate(const hcb_schedule* s, const hcb_channel* h, double residual_tol,
                        double max_condition, double noise_variance, uint64_t symbol_seed,
                        hcb_sim_summary* summary, int* step_passed, char** csv) {
  HCB_REQUIRE(s && h);
  if (!(residual_tol >= 0) || !(max_condition > 0) || !(noise_variance >= 0))
    return fail(HCB_INVALID_ARGUMENT, "tolerances and noise variance must be non-negative");
  return guarded([&] {
    const auto& p = s->schedule.params;
    if (h->h.rx_count() != p.rx_count() || h->h.tx_count() != p.tx_count())
      throw hcb::InvalidInput("channel dimensions do not match the network");
    const auto r = hcb::verify_schedule_decodable(
        s->schedule, h->h, hcb::Tolerances{residual_tol, max_condition}, noise_variance,
        symbol_seed);
    if (summary)
      *summary = hcb_sim_summary{r.all_decoded ? 1 : 0, r.steps,          r.failed_steps,
                                 r.worst_residual,      r.worst_zf_leak,  r.worst_condition};
    if (step_passed)
      for (std::size_t k = 0; k < r.per_step.size(); ++k) step_passed[k] = r.per_step[k].success;
    put(csv, r.to_csv());
    if (!r.all_decoded)
      return fail(HCB_DECODE, std::to_string(r.failed_steps) + " of " + std::to_string(r.steps) +
                                  " steps failed to decode");
    return HCB_OK;
  });
}

}  // extern "C"
