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

// Command-line front end. Every subcommand is a thin adapter over the C API
// in sgalloc.h; exit codes: 0 ok/holds, 2 usage, 3 violation found,
// 4 invalid input, 1 internal failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sgalloc/sgalloc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;
constexpr int kExitInvalid = 4;

struct CliFailure {
  int exit_code;
};

struct InstanceDeleter {
  void operator()(sg_instance* p) const { sg_instance_free(p); }
};
struct AllocationDeleter {
  void operator()(sg_allocation* p) const { sg_allocation_free(p); }
};
struct ReportDeleter {
  void operator()(sg_report* p) const { sg_report_free(p); }
};
using InstancePtr = std::unique_ptr<sg_instance, InstanceDeleter>;
using AllocationPtr = std::unique_ptr<sg_allocation, AllocationDeleter>;
using ReportPtr = std::unique_ptr<sg_report, ReportDeleter>;

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

[[noreturn]] void usage_error(const std::string& message) {
  std::cerr << "{\"error\": {\"code\": \"Usage\", \"message\": \"" << json_escape(message) << "\"}}\n";
  throw CliFailure{kExitUsage};
}

int exit_code_for(sg_status status) {
  switch (status) {
    case SG_OK: return kExitOk;
    case SG_ERR_INVALID_ARGUMENT:
    case SG_ERR_CAP_EXCEEDED: return kExitUsage;
    case SG_ERR_SYNTAX:
    case SG_ERR_VALIDATION:
    case SG_ERR_INFEASIBLE_ALLOCATION:
    case SG_ERR_INVALID_BIDS:
    case SG_ERR_INVALID_SPEEDS:
    case SG_ERR_DIMENSION_MISMATCH: return kExitInvalid;
    case SG_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

void check(sg_status status) {
  if (status == SG_OK) return;
  std::cerr << sg_last_error() << "\n";
  throw CliFailure{exit_code_for(status)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

InstancePtr load_instance(const std::string& path) {
  std::string text = read_file(path);
  sg_instance* raw = nullptr;
  check(sg_instance_parse(text.data(), text.size(), &raw));
  return InstancePtr(raw);
}

AllocationPtr load_allocation(const sg_instance* inst, const std::string& path) {
  std::string text = read_file(path);
  sg_allocation* raw = nullptr;
  check(sg_allocation_parse(inst, text.data(), text.size(), &raw));
  return AllocationPtr(raw);
}

std::size_t agent_index(const sg_instance* inst, const std::string& id) {
  std::size_t index = 0;
  check(sg_instance_agent_index(inst, id.c_str(), &index));
  return index;
}

// Prints the report; exit 3 when it flags a violation and violations count.
int emit(sg_report* raw, bool violation_exits = false) {
  ReportPtr report(raw);
  std::fputs(sg_report_text(report.get()), stdout);
  return violation_exits && sg_report_violation(report.get()) ? kExitViolation : kExitOk;
}

struct Args {
  std::string instance;
  std::string allocation;
  std::optional<std::string> bids;
  std::optional<std::string> speeds;
  bool trace = false;
  std::optional<std::string> agent;
  std::vector<std::string> coalition;
  std::uint64_t cap = 0;
  std::size_t k = 0;
  std::size_t size = 1;
  std::size_t agents = 0;
  std::size_t goods = 0;
  std::uint64_t seed = 0;
  bool unit = false;
  std::size_t samples = 0;
  std::vector<std::size_t> ks;
};

int dispatch(const CLI::App& app, Args& a) {
  if (app.got_subcommand("run")) {
    auto inst = load_instance(a.instance);
    std::optional<std::string> bids, speeds;
    if (a.bids) bids = read_file(*a.bids);
    if (a.speeds) speeds = read_file(*a.speeds);
    sg_report* out = nullptr;
    check(sg_run(inst.get(), bids ? bids->c_str() : nullptr, speeds ? speeds->c_str() : nullptr, a.trace, &out));
    return emit(out);
  }
  if (app.got_subcommand("check-pareto") || app.got_subcommand("check-envy")) {
    auto inst = load_instance(a.instance);
    auto alloc = load_allocation(inst.get(), a.allocation);
    sg_report* out = nullptr;
    if (app.got_subcommand("check-pareto"))
      check(sg_check_pareto(inst.get(), alloc.get(), &out));
    else
      check(sg_check_envy(inst.get(), alloc.get(), &out));
    return emit(out, true);
  }
  if (app.got_subcommand("probe-sp")) {
    auto inst = load_instance(a.instance);
    std::size_t agent = a.agent ? agent_index(inst.get(), *a.agent) : SIZE_MAX;
    sg_report* out = nullptr;
    check(sg_probe_sp(inst.get(), agent, a.cap, &out));
    return emit(out, true);
  }
  if (app.got_subcommand("probe-gsp")) {
    auto inst = load_instance(a.instance);
    std::vector<std::size_t> members;
    for (const auto& id : a.coalition) members.push_back(agent_index(inst.get(), id));
    sg_report* out = nullptr;
    check(sg_probe_gsp(inst.get(), members.data(), members.size(), a.cap, &out));
    return emit(out, true);
  }
  if (app.got_subcommand("hypothesis")) {
    auto inst = load_instance(a.instance);
    sg_report* out = nullptr;
    check(sg_hypothesis(inst.get(), a.size, &out));
    return emit(out);
  }
  if (app.got_subcommand("equitable")) {
    auto inst = load_instance(a.instance);
    sg_report* out = nullptr;
    check(sg_equitable(inst.get(), a.k, &out));
    return emit(out);
  }
  if (app.got_subcommand("lexi-equitable")) {
    auto inst = load_instance(a.instance);
    sg_report* out = nullptr;
    check(sg_lexi_equitable(inst.get(), &out));
    return emit(out);
  }
  if (app.got_subcommand("gen")) {
    sg_instance* raw = nullptr;
    check(sg_instance_generate(a.agents, a.goods, a.seed, a.unit, &raw));
    InstancePtr inst(raw);
    sg_report* out = nullptr;
    check(sg_instance_to_json(inst.get(), &out));
    return emit(out);
  }
  if (app.got_subcommand("stats")) {
    sg_report* out = nullptr;
    check(sg_stats(a.samples, a.agents, a.goods, a.seed, a.ks.empty() ? nullptr : a.ks.data(), a.ks.size(), a.unit,
                   &out));
    return emit(out);
  }
  usage_error("a subcommand is required");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synchronized greedy allocation of divisible goods under lexicographic preferences"};
  app.require_subcommand(1);
  Args a;

  auto* run = app.add_subcommand("run", "Run the mechanism and print the allocation report");
  run->add_option("instance", a.instance, "Instance JSON file")->required();
  run->add_option("--bids", a.bids, "Bid JSON file (default: truthful)");
  run->add_option("--speeds", a.speeds, "Speed-profile JSON file (default: constant)");
  run->add_flag("--trace", a.trace, "Include per-agent consumption segments");

  for (const char* name : {"check-pareto", "check-envy"}) {
    auto* cmd = app.add_subcommand(name, std::string(name) == "check-pareto"
                                             ? "Verify Pareto efficiency; prints certificate or witness"
                                             : "Audit envy-freeness of relative shares");
    cmd->add_option("instance", a.instance, "Instance JSON file")->required();
    cmd->add_option("allocation", a.allocation, "Allocation JSON file")->required();
  }

  auto* sp = app.add_subcommand("probe-sp", "Search all unilateral misreports");
  sp->add_option("instance", a.instance, "Instance JSON file")->required();
  sp->add_option("--agent", a.agent, "Agent id (default: every agent)");
  sp->add_option("--cap", a.cap, "Largest number of goods to enumerate (default 6)");

  auto* gsp = app.add_subcommand("probe-gsp", "Search all joint misreports of a coalition");
  gsp->add_option("instance", a.instance, "Instance JSON file")->required();
  gsp->add_option("--coalition", a.coalition, "Comma-separated agent ids")->required()->delimiter(',');
  gsp->add_option("--cap", a.cap, "Largest joint bid space to enumerate (default 1000000)");

  auto* hyp = app.add_subcommand("hypothesis", "Evaluate the quantity conditions for coalitions of a size");
  hyp->add_option("instance", a.instance, "Instance JSON file")->required();
  hyp->add_option("--size", a.size, "Coalition size")->default_val(1);

  auto* eq = app.add_subcommand("equitable", "Allocation equitable w.r.t. every agent's top k goods");
  eq->add_option("instance", a.instance, "Instance JSON file")->required();
  eq->add_option("--k", a.k, "Prefix length")->required();

  auto* lexi = app.add_subcommand("lexi-equitable", "Lexicographically most equitable allocation");
  lexi->add_option("instance", a.instance, "Instance JSON file")->required();

  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  gen->add_option("--agents", a.agents, "Number of agents")->required();
  gen->add_option("--goods", a.goods, "Number of goods")->required();
  gen->add_option("--seed", a.seed, "Seed")->required();
  gen->add_flag("--unit", a.unit, "All quantities and requirements equal to 1");

  auto* stats = app.add_subcommand("stats", "CSV of beta_k and t*(k) over random instances");
  stats->add_option("--samples", a.samples, "Number of samples")->required();
  stats->add_option("--agents", a.agents, "Number of agents")->required();
  stats->add_option("--goods", a.goods, "Number of goods")->required();
  stats->add_option("--seed", a.seed, "Master seed")->required();
  stats->add_option("--k", a.ks, "Comma-separated prefix lengths (default: all)")->delimiter(',');
  stats->add_flag("--unit", a.unit, "All quantities and requirements equal to 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    try {
      usage_error(e.what());
    } catch (const CliFailure& f) {
      return f.exit_code;
    }
  }

  try {
    return dispatch(app, a);
  } catch (const CliFailure& f) {
    return f.exit_code;
  }
}
