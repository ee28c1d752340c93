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

#ifndef HCB_HCB_H
#define HCB_HCB_H

#include <stddef.h>
#include <stdint.h>

#if defined(HCB_BUILDING_LIBRARY)
#define HCB_API __attribute__((visibility("default")))
#else
#define HCB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hcb_status {
  HCB_OK = 0,
  HCB_INVALID_ARGUMENT = 1,
  HCB_VALIDATION = 2,
  HCB_RESOURCE_LIMIT = 3,
  HCB_SOLVER = 4,
  HCB_PARSE = 5,
  HCB_IO = 6,
  HCB_COVERAGE = 7,
  HCB_DECODE = 8,
  HCB_INTERNAL = 9
} hcb_status;

/* Violation codes reported by hcb_network_violation_code. */
typedef enum hcb_violation {
  HCB_VIOLATION_NON_POSITIVE = 1,
  HCB_VIOLATION_LIBRARY_NOT_COVERED = 2,
  HCB_VIOLATION_NON_INTEGER_T_T = 3,
  HCB_VIOLATION_NON_INTEGER_T_R = 4,
  HCB_VIOLATION_NON_INTEGER_D_T = 5,
  HCB_VIOLATION_NON_INTEGER_D_R = 6,
  HCB_VIOLATION_NON_INTEGER_DELTA = 7,
  HCB_VIOLATION_D_R_TOO_SMALL = 8,
  HCB_VIOLATION_DOF_EXCEEDS_K_R = 9
} hcb_violation;

typedef enum hcb_route {
  HCB_ROUTE_DIRECT = 0,
  HCB_ROUTE_MEMORY_SHARING = 1,
  HCB_ROUTE_MEMORY_CAP = 2
} hcb_route;

typedef enum hcb_channel_model {
  HCB_CHANNEL_GAUSSIAN = 0,
  HCB_CHANNEL_RANK_ONE = 1
} hcb_channel_model;

typedef struct hcb_run_config hcb_run_config;
typedef struct hcb_network hcb_network;
typedef struct hcb_schedule hcb_schedule;
typedef struct hcb_channel hcb_channel;

typedef struct hcb_params {
  int t_T;
  int t_R;
  int D_T;
  int D_R;
  int delta;
  int K_T;
  int K_R;
  int N;
} hcb_params;

typedef struct hcb_sim_summary {
  int all_decoded;
  size_t steps;
  size_t failed_steps;
  double worst_residual;
  double worst_zf_leak;
  double worst_condition;
} hcb_sim_summary;

/* Message of the last failed call on this thread; never NULL. */
HCB_API const char* hcb_last_error(void);
HCB_API const char* hcb_status_name(hcb_status s);
/* Frees strings returned through char** out-parameters. */
HCB_API void hcb_string_free(char* s);

/* Run configuration (JSON). */
HCB_API hcb_status hcb_run_config_load(const char* path, hcb_run_config** out);
HCB_API hcb_status hcb_run_config_parse(const char* text, hcb_run_config** out);
HCB_API void hcb_run_config_free(hcb_run_config* cfg);
HCB_API hcb_status hcb_run_config_set_channel_seed(hcb_run_config* cfg, uint64_t seed);
HCB_API hcb_status hcb_run_config_set_noise(hcb_run_config* cfg, double variance);
HCB_API hcb_status hcb_run_config_set_tolerance(hcb_run_config* cfg, double residual);
HCB_API hcb_status hcb_run_config_set_output_dir(hcb_run_config* cfg, const char* dir);
HCB_API hcb_status hcb_run_config_output_dir(const hcb_run_config* cfg, char** out);
HCB_API hcb_status hcb_run_config_channel(const hcb_run_config* cfg, uint64_t* seed,
                                          int* retries, hcb_channel_model* model);
HCB_API hcb_status hcb_run_config_noise(const hcb_run_config* cfg, double* variance,
                                        uint64_t* symbol_seed);
HCB_API hcb_status hcb_run_config_tolerances(const hcb_run_config* cfg, double* residual,
                                             double* max_condition);
/* 1 when the config carries a sweep section (grid or explicit configs). */
HCB_API int hcb_run_config_has_sweep(const hcb_run_config* cfg);

/* Network. Memories are decimal or "p/q" strings. Creation succeeds for any
   well-formed input; constraint violations are queried afterwards. */
HCB_API hcb_status hcb_network_create(int64_t K_T, int64_t K_R, const char* M_T,
                                      const char* M_R, int64_t N, hcb_network** out);
HCB_API hcb_status hcb_network_from_config(const hcb_run_config* cfg, hcb_network** out);
HCB_API void hcb_network_free(hcb_network* net);
HCB_API int hcb_network_is_valid(const hcb_network* net);
HCB_API size_t hcb_network_violation_count(const hcb_network* net);
HCB_API int hcb_network_violation_code(const hcb_network* net, size_t i);
HCB_API hcb_status hcb_network_violation_message(const hcb_network* net, size_t i, char** out);
HCB_API hcb_status hcb_network_params(const hcb_network* net, hcb_params* out);

/* Text report (exact values). Invalid networks whose only problems are
   non-integer caching parameters or t_T + t_R > K_R are routed to the
   memory-sharing planner or the memory cap; *route says which. csv may be
   NULL. */
HCB_API hcb_status hcb_analyze(const hcb_network* net, char** report, char** csv,
                               hcb_route* route);

/* Sweep over "d=..;t=..;delta=.." or the config's sweep section. Skipped
   points are listed one per line in *log (may be NULL). */
HCB_API hcb_status hcb_sweep_grid(const char* grid, char** csv, char** log);
HCB_API hcb_status hcb_sweep_config(const hcb_run_config* cfg, char** csv, char** log);

/* Schedule for an explicit demand (one file index per receiver). */
HCB_API hcb_status hcb_schedule_build(const hcb_network* net, const int* demand, size_t len,
                                      hcb_schedule** out);
/* Schedule for the config's network and demand. */
HCB_API hcb_status hcb_schedule_build_from_config(const hcb_run_config* cfg,
                                                  hcb_schedule** out);
HCB_API void hcb_schedule_free(hcb_schedule* s);
HCB_API size_t hcb_schedule_step_count(const hcb_schedule* s);
HCB_API size_t hcb_schedule_packet_count(const hcb_schedule* s);
HCB_API hcb_status hcb_schedule_export(const hcb_schedule* s, char** out);
/* HCB_OK when every demanded packet is delivered exactly once, HCB_COVERAGE
   otherwise. report may be NULL. */
HCB_API hcb_status hcb_schedule_verify(const hcb_schedule* s, char** report);

HCB_API hcb_status hcb_channel_sample(const hcb_network* net, uint64_t seed,
                                      hcb_channel_model model, hcb_channel** out);
HCB_API void hcb_channel_free(hcb_channel* h);
HCB_API hcb_status hcb_channel_set_gain(hcb_channel* h, int rx, int tx, double re, double im);
HCB_API hcb_status hcb_channel_gain(const hcb_channel* h, int rx, int tx, double* re,
                                    double* im);

/* Solves and simulates every step. HCB_OK when all receivers decode,
   HCB_DECODE when some do not, HCB_SOLVER on an ill-conditioned system.
   step_passed, when not NULL, must hold hcb_schedule_step_count entries and
   receives 1 or 0 per step. summary and csv may be NULL. */
HCB_API hcb_status hcb_simulate(const hcb_schedule* s, const hcb_channel* h, double residual_tol,
                                double max_condition, double noise_variance,
                                uint64_t symbol_seed, hcb_sim_summary* summary,
                                int* step_passed, char** csv);

#ifdef __cplusplus
}
#endif

#endif /* HCB_HCB_H */
