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

// hcb-cli: command-line front end over the hcb C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcb/hcb.h"

namespace fs = std::filesystem;

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kIo = 3,
  kCoverage = 4,
  kDecode = 5,
  kSolver = 6,
  kValidationBase = 10,  // + first violation code
};

struct CliError {
  int code;
  std::string message;
};

struct Options {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise;
  std::optional<double> tol;
  std::optional<std::string> grid;
};

int exit_for(hcb_status s) {
  switch (s) {
    case HCB_OK: return kOk;
    case HCB_PARSE: return kParse;
    case HCB_IO: return kIo;
    case HCB_COVERAGE: return kCoverage;
    case HCB_DECODE: return kDecode;
    case HCB_SOLVER: return kSolver;
    default: return kUsage;
  }
}

void check(hcb_status s) {
  if (s != HCB_OK) throw CliError{exit_for(s), hcb_last_error()};
}

// Owns a string returned by the C API.
struct CString {
  char* p = nullptr;
  ~CString() { hcb_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};

using RunConfig = Handle<hcb_run_config, hcb_run_config_free>;
using Network = Handle<hcb_network, hcb_network_free>;
using Schedule = Handle<hcb_schedule, hcb_schedule_free>;
using Channel = Handle<hcb_channel, hcb_channel_free>;

// Writes through a sibling temp file and renames, so readers never see a
// partial output.
void write_atomic(const fs::path& path, const std::string& data) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw CliError{kIo, "cannot create " + path.parent_path().string() + ": " + ec.message()};
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw CliError{kIo, "cannot write " + tmp.string()};
    f << data;
    f.flush();
    if (!f) throw CliError{kIo, "write failed for " + tmp.string()};
  }
  fs::rename(tmp, path, ec);
  if (ec) throw CliError{kIo, "cannot rename " + tmp.string() + ": " + ec.message()};
}

void load_config(const Options& o, RunConfig& rc) {
  if (o.config.empty()) throw CliError{kUsage, "--config is required"};
  check(hcb_run_config_load(o.config.c_str(), rc.out()));
  if (o.seed) check(hcb_run_config_set_channel_seed(rc.get(), *o.seed));
  if (o.noise) check(hcb_run_config_set_noise(rc.get(), *o.noise));
  if (o.tol) check(hcb_run_config_set_tolerance(rc.get(), *o.tol));
  if (o.out) check(hcb_run_config_set_output_dir(rc.get(), o.out->c_str()));
}

fs::path output_dir(const RunConfig& rc) {
  CString dir;
  check(hcb_run_config_output_dir(rc.get(), dir.out()));
  return dir.str();
}

// Exits with 10 + first violation code, after listing every violation.
void require_valid(const Network& net) {
  if (hcb_network_is_valid(net.get())) return;
  std::string msg = "invalid network configuration:";
  const size_t n = hcb_network_violation_count(net.get());
  for (size_t i = 0; i < n; ++i) {
    CString m;
    check(hcb_network_violation_message(net.get(), i, m.out()));
    msg += "\n  " + m.str();
  }
  throw CliError{kValidationBase + hcb_network_violation_code(net.get(), 0), msg};
}

int cmd_analyze(const Options& o) {
  RunConfig rc;
  load_config(o, rc);
  Network net;
  check(hcb_network_from_config(rc.get(), net.out()));
  CString report, csv;
  hcb_route route = HCB_ROUTE_DIRECT;
  const hcb_status s = hcb_analyze(net.get(), report.out(), csv.out(), &route);
  if (s == HCB_VALIDATION) require_valid(net);
  check(s);
  std::cout << report.str();
  if (o.out) {
    write_atomic(fs::path(*o.out) / "analyze.txt", report.str());
    write_atomic(fs::path(*o.out) / "analyze.csv", csv.str());
  }
  return kOk;
}

int cmd_schedule(const Options& o) {
  RunConfig rc;
  load_config(o, rc);
  Network net;
  check(hcb_network_from_config(rc.get(), net.out()));
  require_valid(net);
  Schedule sched;
  check(hcb_schedule_build_from_config(rc.get(), sched.out()));
  CString text, report;
  check(hcb_schedule_export(sched.get(), text.out()));
  const hcb_status verdict = hcb_schedule_verify(sched.get(), report.out());
  if (verdict != HCB_OK && verdict != HCB_COVERAGE) check(verdict);

  const fs::path dir = output_dir(rc);
  write_atomic(dir / "schedule.txt", text.str());
  write_atomic(dir / "coverage.txt", report.str());
  std::cout << "steps: " << hcb_schedule_step_count(sched.get()) << '\n'
            << "packets: " << hcb_schedule_packet_count(sched.get()) << '\n'
            << "schedule: " << (dir / "schedule.txt").string() << '\n'
            << "coverage: " << (verdict == HCB_OK ? "PASS" : "FAIL") << " ("
            << (dir / "coverage.txt").string() << ")\n";
  if (verdict == HCB_COVERAGE) {
    std::cerr << "coverage failure, see " << (dir / "coverage.txt").string() << '\n';
    return kCoverage;
  }
  return kOk;
}

int cmd_simulate(const Options& o) {
  RunConfig rc;
  load_config(o, rc);
  Network net;
  check(hcb_network_from_config(rc.get(), net.out()));
  require_valid(net);
  Schedule sched;
  check(hcb_schedule_build_from_config(rc.get(), sched.out()));

  uint64_t seed = 0;
  int retries = 0;
  hcb_channel_model model = HCB_CHANNEL_GAUSSIAN;
  check(hcb_run_config_channel(rc.get(), &seed, &retries, &model));
  double noise = 0, residual_tol = 0, max_cond = 0;
  uint64_t symbol_seed = 0;
  check(hcb_run_config_noise(rc.get(), &noise, &symbol_seed));
  check(hcb_run_config_tolerances(rc.get(), &residual_tol, &max_cond));

  const size_t steps = hcb_schedule_step_count(sched.get());
  std::vector<int> passed(steps, 0);
  hcb_sim_summary sum{};
  CString csv;
  hcb_status s = HCB_SOLVER;
  uint64_t used_seed = seed;
  for (int attempt = 0; attempt <= retries; ++attempt) {
    used_seed = seed + static_cast<uint64_t>(attempt);
    Channel h;
    check(hcb_channel_sample(net.get(), used_seed, model, h.out()));
    hcb_string_free(csv.p);
    csv.p = nullptr;
    s = hcb_simulate(sched.get(), h.get(), residual_tol, max_cond, 0.0, symbol_seed, &sum,
                     passed.data(), csv.out());
    if (s != HCB_SOLVER) break;
    std::cerr << "channel seed " << used_seed << ": " << hcb_last_error() << '\n';
  }
  if (s == HCB_SOLVER)
    throw CliError{kSolver, "no well-conditioned channel after " + std::to_string(retries + 1) +
                                " attempt(s): " + hcb_last_error()};
  if (s != HCB_OK && s != HCB_DECODE) check(s);

  const fs::path dir = output_dir(rc);
  write_atomic(dir / "simulate.csv", csv.str());
  std::printf("channel_seed: %llu\n", static_cast<unsigned long long>(used_seed));
  std::printf("steps: %zu\nfailed_steps: %zu\n", sum.steps, sum.failed_steps);
  std::printf("worst_residual: %.6e\nworst_zf_leak: %.6e\nworst_condition: %.6e\n",
              sum.worst_residual, sum.worst_zf_leak, sum.worst_condition);
  for (size_t k = 0; k < steps; ++k) std::printf("step %zu: %s\n", k, passed[k] ? "pass" : "fail");

  if (noise > 0) {
    // Noisy demonstration only; the exit status follows the noiseless check.
    Channel h;
    check(hcb_channel_sample(net.get(), used_seed, model, h.out()));
    hcb_sim_summary noisy{};
    CString noisy_csv;
    const hcb_status ns = hcb_simulate(sched.get(), h.get(), residual_tol, max_cond, noise,
                                       symbol_seed, &noisy, nullptr, noisy_csv.out());
    if (ns != HCB_OK && ns != HCB_DECODE) check(ns);
    write_atomic(dir / "simulate_noisy.csv", noisy_csv.str());
    std::printf("noisy(variance=%g): %zu of %zu steps with every symbol recovered\n", noise,
                noisy.steps - noisy.failed_steps, noisy.steps);
  }
  std::printf("result: %s\n", s == HCB_OK ? "PASS" : "FAIL");
  return s == HCB_OK ? kOk : kDecode;
}

int cmd_sweep(const Options& o) {
  CString csv, log;
  if (o.grid) {
    check(hcb_sweep_grid(o.grid->c_str(), csv.out(), log.out()));
  } else if (!o.config.empty()) {
    RunConfig rc;
    load_config(o, rc);
    if (!hcb_run_config_has_sweep(rc.get()))
      throw CliError{kParse, "config has no 'sweep' section and no --grid was given"};
    check(hcb_sweep_config(rc.get(), csv.out(), log.out()));
  } else {
    throw CliError{kUsage, "sweep needs --grid SPEC or --config PATH"};
  }
  if (!log.str().empty()) std::cerr << "skipped invalid points:\n" << log.str();
  if (o.out)
    write_atomic(fs::path(*o.out) / "sweep.csv", csv.str());
  else
    std::cout << csv.str();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypercube cache placement and one-shot delivery toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool grid) {
    sub->add_option("--config", o.config, "JSON run configuration");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--seed", o.seed, "channel seed (overrides the config)");
    sub->add_option("--noise", o.noise, "noise variance for the noisy demonstration");
    sub->add_option("--tol", o.tol, "residual tolerance");
    if (grid) sub->add_option("--grid", o.grid, "grid spec, e.g. \"d=3,4;t=1:6;delta=1,2\"");
  };
  auto* analyze = app.add_subcommand("analyze", "closed-form counts, gap and bounds");
  auto* schedule = app.add_subcommand("schedule", "build and verify the delivery schedule");
  auto* simulate = app.add_subcommand("simulate", "solve precoders and check decodability");
  auto* sweep = app.add_subcommand("sweep", "gap sweep CSV over a (d, t, delta) grid");
  add_common(analyze, false);
  add_common(schedule, false);
  add_common(simulate, false);
  add_common(sweep, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return cmd_analyze(o);
    if (*schedule) return cmd_schedule(o);
    if (*simulate) return cmd_simulate(o);
    if (*sweep) return cmd_sweep(o);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
