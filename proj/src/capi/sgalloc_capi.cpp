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

#include "sgalloc/sgalloc.h"

#include <limits>
#include <new>
#include <string>

#include "sgalloc/efficiency.hpp"
#include "sgalloc/engine.hpp"
#include "sgalloc/equity.hpp"
#include "sgalloc/experiment.hpp"
#include "sgalloc/io.hpp"
#include "sgalloc/probes.hpp"

struct sg_instance {
  sgm::Instance value;
};

struct sg_allocation {
  sgm::Allocation value;
};

struct sg_report {
  std::string text;
  int violation = 0;
};

namespace {

using sgm::io::json;

thread_local std::string last_error = "{}";

sg_status status_for(sgm::ErrorCode code) {
  using sgm::ErrorCode;
  switch (code) {
    case ErrorCode::SumMismatch:
    case ErrorCode::NonPositiveQuantity:
    case ErrorCode::NonPositiveRequirement:
    case ErrorCode::InvalidPermutation:
    case ErrorCode::InvalidInstance: return SG_ERR_VALIDATION;
    case ErrorCode::DimensionMismatch: return SG_ERR_DIMENSION_MISMATCH;
    case ErrorCode::InfeasibleAllocation: return SG_ERR_INFEASIBLE_ALLOCATION;
    case ErrorCode::InvalidBids: return SG_ERR_INVALID_BIDS;
    case ErrorCode::SpeedIntegralMismatch:
    case ErrorCode::InvalidSpeedSegments: return SG_ERR_INVALID_SPEEDS;
    case ErrorCode::CapExceeded: return SG_ERR_CAP_EXCEEDED;
    case ErrorCode::SyntaxError: return SG_ERR_SYNTAX;
    case ErrorCode::NotParetoEfficient:
    case ErrorCode::InvalidArgument: return SG_ERR_INVALID_ARGUMENT;
    case ErrorCode::MalformedProgram: return SG_ERR_INTERNAL;
  }
  return SG_ERR_INTERNAL;
}

sg_status fail(sg_status status, std::string_view code, const std::string& message,
               std::optional<std::size_t> index = std::nullopt) {
  json err = {{"code", code}, {"message", message}};
  if (index) err["index"] = *index;
  last_error = json{{"error", err}}.dump();
  return status;
}

// Runs body, translating exceptions into status codes and last_error.
template <typename Body>
sg_status guarded(Body&& body) {
  try {
    body();
    last_error = "{}";
    return SG_OK;
  } catch (const sgm::Error& e) {
    return fail(status_for(e.code()), sgm::to_string(e.code()), e.what(), e.index());
  } catch (const std::bad_alloc&) {
    return fail(SG_ERR_INTERNAL, "OutOfMemory", "out of memory");
  } catch (const std::exception& e) {
    return fail(SG_ERR_INTERNAL, "Internal", e.what());
  }
}

sg_status null_argument() { return fail(SG_ERR_INVALID_ARGUMENT, "InvalidArgument", "null argument"); }

sg_report* make_report(const json& doc, bool violation = false) {
  return new sg_report{sgm::io::dump(doc), violation ? 1 : 0};
}

sgm::ProbeOptions probe_options(uint64_t cap, bool joint) {
  sgm::ProbeOptions options;
  if (cap != 0) {
    if (joint)
      options.max_joint_bids = cap;
    else
      options.max_goods = static_cast<std::size_t>(cap);
  }
  return options;
}

}  // namespace

extern "C" {

const char* sg_version(void) { return "1.0.0"; }

const char* sg_status_name(sg_status status) {
  switch (status) {
    case SG_OK: return "Ok";
    case SG_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SG_ERR_SYNTAX: return "SyntaxError";
    case SG_ERR_VALIDATION: return "ValidationError";
    case SG_ERR_INFEASIBLE_ALLOCATION: return "InfeasibleAllocation";
    case SG_ERR_INVALID_BIDS: return "InvalidBids";
    case SG_ERR_INVALID_SPEEDS: return "InvalidSpeeds";
    case SG_ERR_CAP_EXCEEDED: return "CapExceeded";
    case SG_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case SG_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* sg_last_error(void) { return last_error.c_str(); }

sg_status sg_instance_parse(const char* text, size_t length, sg_instance** out) {
  if (!text || !out) return null_argument();
  return guarded([&] { *out = new sg_instance{sgm::io::parse_instance(std::string_view(text, length))}; });
}

sg_status sg_instance_generate(size_t agents, size_t goods, uint64_t seed, int unit, sg_instance** out) {
  if (!out) return null_argument();
  return guarded([&] { *out = new sg_instance{sgm::generate_instance({agents, goods, seed, unit != 0})}; });
}

void sg_instance_free(sg_instance* inst) { delete inst; }

size_t sg_instance_num_agents(const sg_instance* inst) { return inst ? inst->value.num_agents() : 0; }

size_t sg_instance_num_goods(const sg_instance* inst) { return inst ? inst->value.num_goods() : 0; }

sg_status sg_instance_agent_index(const sg_instance* inst, const char* id, size_t* index) {
  if (!inst || !id || !index) return null_argument();
  return guarded([&] { *index = sgm::io::agent_index(inst->value, id); });
}

sg_status sg_instance_to_json(const sg_instance* inst, sg_report** out) {
  if (!inst || !out) return null_argument();
  return guarded([&] { *out = make_report(sgm::io::instance_to_json(inst->value)); });
}

sg_status sg_allocation_parse(const sg_instance* inst, const char* text, size_t length, sg_allocation** out) {
  if (!inst || !text || !out) return null_argument();
  return guarded(
      [&] { *out = new sg_allocation{sgm::io::parse_allocation(inst->value, std::string_view(text, length))}; });
}

void sg_allocation_free(sg_allocation* alloc) { delete alloc; }

sg_status sg_allocation_entry(const sg_allocation* alloc, size_t agent, size_t good, char* buffer, size_t capacity,
                              size_t* needed) {
  if (!alloc) return null_argument();
  if (agent >= alloc->value.num_agents() || good >= alloc->value.num_goods())
    return fail(SG_ERR_INVALID_ARGUMENT, "InvalidArgument", "entry index out of range");
  std::string s = alloc->value(agent, good).str();
  if (needed) *needed = s.size() + 1;
  if (!buffer || capacity < s.size() + 1)
    return fail(SG_ERR_INVALID_ARGUMENT, "InvalidArgument", "buffer too small");
  s.copy(buffer, s.size());
  buffer[s.size()] = '\0';
  return SG_OK;
}

sg_status sg_run(const sg_instance* inst, const char* bids_json, const char* speeds_json, int keep_trace,
                 sg_report** out) {
  if (!inst || !out) return null_argument();
  return guarded([&] {
    const auto& instance = inst->value;
    auto bids = bids_json ? sgm::io::parse_bids(instance, bids_json) : sgm::BidProfile::truthful(instance);
    auto speeds = speeds_json ? sgm::io::parse_speeds(instance, speeds_json) : sgm::SpeedProfile::constant(instance);
    auto result = sgm::run_extended_sg(instance, bids, speeds, sgm::RunOptions{.keep_segments = keep_trace != 0});
    *out = make_report(sgm::io::run_report(instance, result, keep_trace != 0));
  });
}

sg_status sg_check_pareto(const sg_instance* inst, const sg_allocation* alloc, sg_report** out) {
  if (!inst || !alloc || !out) return null_argument();
  return guarded([&] {
    auto verdict = sgm::check_pareto(inst->value, alloc->value);
    *out = make_report(sgm::io::pareto_report(inst->value, verdict),
                       std::holds_alternative<sgm::Inefficient>(verdict));
  });
}

sg_status sg_check_envy(const sg_instance* inst, const sg_allocation* alloc, sg_report** out) {
  if (!inst || !alloc || !out) return null_argument();
  return guarded([&] {
    auto report = sgm::check_envy(inst->value, alloc->value);
    *out = make_report(sgm::io::envy_report(inst->value, report), !report.envy_free());
  });
}

sg_status sg_probe_sp(const sg_instance* inst, size_t agent, uint64_t cap, sg_report** out) {
  if (!inst || !out) return null_argument();
  return guarded([&] {
    const auto& instance = inst->value;
    auto options = probe_options(cap, false);
    json doc;
    doc["hypothesis"] = sgm::io::hypothesis_to_json(sgm::hypothesis_report(instance, 1), 1);
    bool found = false;
    json results = json::array();
    for (std::size_t i = 0; i < instance.num_agents(); ++i) {
      if (agent != SIZE_MAX && agent != i) continue;
      auto finding = sgm::probe_sp(instance, i, options);
      found = found || finding.has_value();
      json entry = {{"agent", instance.agents[i].id}};
      entry.update(sgm::io::finding_report(instance, finding));
      results.push_back(entry);
    }
    if (agent != SIZE_MAX && results.empty()) throw sgm::Error(sgm::ErrorCode::InvalidArgument, "agent out of range");
    doc["probes"] = results;
    *out = make_report(doc, found);
  });
}

sg_status sg_probe_gsp(const sg_instance* inst, const size_t* coalition, size_t coalition_size, uint64_t cap,
                       sg_report** out) {
  if (!inst || !out || (!coalition && coalition_size > 0)) return null_argument();
  return guarded([&] {
    const auto& instance = inst->value;
    std::vector<std::size_t> members(coalition, coalition + coalition_size);
    auto finding = sgm::probe_gsp(instance, members, probe_options(cap, true));
    json doc;
    if (coalition_size > 0 && coalition_size <= instance.num_agents())
      doc["hypothesis"] = sgm::io::hypothesis_to_json(sgm::hypothesis_report(instance, coalition_size), coalition_size);
    doc.update(sgm::io::finding_report(instance, finding));
    *out = make_report(doc, finding.has_value());
  });
}

sg_status sg_hypothesis(const sg_instance* inst, size_t coalition_size, sg_report** out) {
  if (!inst || !out) return null_argument();
  return guarded([&] {
    *out = make_report(
        sgm::io::hypothesis_to_json(sgm::hypothesis_report(inst->value, coalition_size), coalition_size));
  });
}

sg_status sg_equitable(const sg_instance* inst, size_t k, sg_report** out) {
  if (!inst || !out) return null_argument();
  return guarded([&] {
    *out = make_report(sgm::io::equitable_report(inst->value, k, sgm::equitable_top_k(inst->value, k)));
  });
}

sg_status sg_lexi_equitable(const sg_instance* inst, sg_report** out) {
  if (!inst || !out) return null_argument();
  return guarded([&] {
    auto result = sgm::lexi_equitable(inst->value);
    auto verdict = sgm::check_pareto(inst->value, result.allocation);
    *out = make_report(sgm::io::lexi_report(inst->value, result, verdict));
  });
}

sg_status sg_stats(size_t samples, size_t agents, size_t goods, uint64_t seed, const size_t* ks, size_t num_ks,
                   int unit, sg_report** out) {
  if (!out || (!ks && num_ks > 0)) return null_argument();
  return guarded([&] {
    sgm::StatsOptions options;
    options.samples = samples;
    options.agents = agents;
    options.goods = goods;
    options.seed = seed;
    options.unit = unit != 0;
    if (ks) options.ks.assign(ks, ks + num_ks);
    *out = new sg_report{sgm::stats_csv(options), 0};
  });
}

const char* sg_report_text(const sg_report* report) { return report ? report->text.c_str() : ""; }

int sg_report_violation(const sg_report* report) { return report ? report->violation : 0; }

void sg_report_free(sg_report* report) { delete report; }

}  // extern "C"
