// Copyright 2026 The sgalloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SGALLOC_SGALLOC_H
#define SGALLOC_SGALLOC_H

/*
 * C interface to the synchronized-greedy allocation library.
 *
 * Objects are opaque handles created by the library and released with the
 * matching *_free function. Every fallible call returns an sg_status; on
 * failure, sg_last_error() describes the error of the most recent failing
 * call on the calling thread as a JSON object
 *   {"error": {"code": "...", "message": "...", "index": N}}
 * ("index" present only when it identifies an agent, good or segment).
 *
 * Results are delivered as sg_report handles holding UTF-8 text (JSON or
 * CSV) and a violation flag for the verifier and probe calls.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define SG_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define SG_API __attribute__((visibility("default")))
#else
#  define SG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
  SG_OK = 0,
  SG_ERR_INVALID_ARGUMENT = 1,   /* null pointer, unknown id, bad k, ... */
  SG_ERR_SYNTAX = 2,             /* malformed JSON, rational or document shape */
  SG_ERR_VALIDATION = 3,         /* instance invariant violated */
  SG_ERR_INFEASIBLE_ALLOCATION = 4,
  SG_ERR_INVALID_BIDS = 5,
  SG_ERR_INVALID_SPEEDS = 6,
  SG_ERR_CAP_EXCEEDED = 7,
  SG_ERR_DIMENSION_MISMATCH = 8,
  SG_ERR_INTERNAL = 9
} sg_status;

typedef struct sg_instance sg_instance;
typedef struct sg_allocation sg_allocation;
typedef struct sg_report sg_report;

SG_API const char* sg_version(void);
SG_API const char* sg_status_name(sg_status status);
SG_API const char* sg_last_error(void);

/* Instances */
SG_API sg_status sg_instance_parse(const char* json, size_t length, sg_instance** out);
SG_API sg_status sg_instance_generate(size_t agents, size_t goods, uint64_t seed, int unit, sg_instance** out);
SG_API void sg_instance_free(sg_instance* inst);
SG_API size_t sg_instance_num_agents(const sg_instance* inst);
SG_API size_t sg_instance_num_goods(const sg_instance* inst);
/* Index of the agent with the given id. */
SG_API sg_status sg_instance_agent_index(const sg_instance* inst, const char* id, size_t* index);
SG_API sg_status sg_instance_to_json(const sg_instance* inst, sg_report** out);

/* Allocations (rows in the instance's agent order) */
SG_API sg_status sg_allocation_parse(const sg_instance* inst, const char* json, size_t length, sg_allocation** out);
SG_API void sg_allocation_free(sg_allocation* alloc);
/* Writes entry (agent, good) as a "p" or "p/q" string, NUL-terminated.
 * Sets *needed to the buffer size required including the terminator. */
SG_API sg_status sg_allocation_entry(const sg_allocation* alloc, size_t agent, size_t good, char* buffer,
                                     size_t capacity, size_t* needed);

/* Mechanism runs. bids_json / speeds_json may be NULL (truthful bids,
 * constant speeds). keep_trace != 0 adds per-agent consumption segments. */
SG_API sg_status sg_run(const sg_instance* inst, const char* bids_json, const char* speeds_json, int keep_trace,
                        sg_report** out);

/* Verifiers: violation flag set when Inefficient / envy found. */
SG_API sg_status sg_check_pareto(const sg_instance* inst, const sg_allocation* alloc, sg_report** out);
SG_API sg_status sg_check_envy(const sg_instance* inst, const sg_allocation* alloc, sg_report** out);

/* Manipulation probes: violation flag set when a finding is reported.
 * agent == SIZE_MAX probes every agent. cap == 0 keeps the default caps
 * (6 goods for probe_sp, 10^6 joint bids for probe_gsp). */
SG_API sg_status sg_probe_sp(const sg_instance* inst, size_t agent, uint64_t cap, sg_report** out);
SG_API sg_status sg_probe_gsp(const sg_instance* inst, const size_t* coalition, size_t coalition_size, uint64_t cap,
                              sg_report** out);
SG_API sg_status sg_hypothesis(const sg_instance* inst, size_t coalition_size, sg_report** out);

/* Equitable allocations */
SG_API sg_status sg_equitable(const sg_instance* inst, size_t k, sg_report** out);
SG_API sg_status sg_lexi_equitable(const sg_instance* inst, sg_report** out);

/* CSV of beta_k and t*(k) over random samples. ks may be NULL (all k). */
SG_API sg_status sg_stats(size_t samples, size_t agents, size_t goods, uint64_t seed, const size_t* ks, size_t num_ks,
                          int unit, sg_report** out);

/* Reports */
SG_API const char* sg_report_text(const sg_report* report);
SG_API int sg_report_violation(const sg_report* report);
SG_API void sg_report_free(sg_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SGALLOC_SGALLOC_H */
