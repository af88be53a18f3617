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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "sgalloc/sgalloc.h"

using json = nlohmann::json;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(SG_FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Instance {
  sg_instance* p = nullptr;
  explicit Instance(const std::string& text) { REQUIRE(sg_instance_parse(text.data(), text.size(), &p) == SG_OK); }
  ~Instance() { sg_instance_free(p); }
};

// Takes ownership of the report and returns its JSON.
json take(sg_report* report, int* violation = nullptr) {
  REQUIRE(report != nullptr);
  json doc = json::parse(sg_report_text(report));
  if (violation) *violation = sg_report_violation(report);
  sg_report_free(report);
  return doc;
}

}  // namespace

TEST_CASE("library metadata") {
  CHECK(std::string(sg_version()) == "1.0.0");
  CHECK(std::string(sg_status_name(SG_ERR_CAP_EXCEEDED)) == "CapExceeded");
}

TEST_CASE("parse errors set status and last error") {
  sg_instance* p = nullptr;
  auto text = fixture("zero_quantity.json");
  CHECK(sg_instance_parse(text.data(), text.size(), &p) == SG_ERR_VALIDATION);
  CHECK(p == nullptr);
  auto err = json::parse(sg_last_error());
  CHECK(err["error"]["code"] == "NonPositiveQuantity");

  text = fixture("bad_rational.json");
  CHECK(sg_instance_parse(text.data(), text.size(), &p) == SG_ERR_SYNTAX);
  text = fixture("broken.json");
  CHECK(sg_instance_parse(text.data(), text.size(), &p) == SG_ERR_SYNTAX);
  CHECK(std::string(sg_last_error()).find("line 3") != std::string::npos);
  CHECK(sg_instance_parse(nullptr, 0, &p) == SG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("run with truthful and misreported bids") {
  Instance inst(fixture("three_goods.json"));
  CHECK(sg_instance_num_agents(inst.p) == 2);
  CHECK(sg_instance_num_goods(inst.p) == 3);
  sg_report* out = nullptr;
  REQUIRE(sg_run(inst.p, nullptr, nullptr, 0, &out) == SG_OK);
  auto truthful = take(out);
  CHECK(truthful["sorted_allocation"][0] == json::array({"1", "0", "1/2"}));
  CHECK(truthful["events"][0]["time"] == "2/3");

  auto bids = fixture("three_goods_lie.json");
  REQUIRE(sg_run(inst.p, bids.c_str(), nullptr, 1, &out) == SG_OK);
  auto lied = take(out);
  CHECK(lied["sorted_allocation"][0] == json::array({"1", "1/2", "0"}));
  CHECK(lied.contains("trace"));

  CHECK(sg_run(inst.p, R"({"bids": [{"agent": "1", "preference": ["B"]}]})", nullptr, 0, &out) ==
        SG_ERR_INVALID_BIDS);
}

TEST_CASE("variable speeds through the C interface") {
  Instance inst(fixture("variable_speeds.json"));
  auto speeds = fixture("variable_speeds_profile.json");
  sg_report* out = nullptr;
  REQUIRE(sg_run(inst.p, nullptr, speeds.c_str(), 0, &out) == SG_OK);
  CHECK(take(out)["sorted_allocation"][0] == json::array({"1/2", "0", "1/2", "0"}));
  auto bids = fixture("variable_speeds_lie.json");
  REQUIRE(sg_run(inst.p, bids.c_str(), speeds.c_str(), 0, &out) == SG_OK);
  CHECK(take(out)["sorted_allocation"][0] == json::array({"1/2", "1/3", "1/6", "0"}));
  CHECK(sg_run(inst.p, nullptr, R"({"speeds": [{"agent": "a1", "segments": [{"end": "1", "rate": "2"}]}]})", 0,
               &out) == SG_ERR_INVALID_SPEEDS);
}

TEST_CASE("verifiers flag violations") {
  Instance inst(fixture("opposed_pair.json"));
  auto text = fixture("opposed_pair_swapped.json");
  sg_allocation* alloc = nullptr;
  REQUIRE(sg_allocation_parse(inst.p, text.data(), text.size(), &alloc) == SG_OK);
  char buf[8];
  std::size_t needed = 0;
  REQUIRE(sg_allocation_entry(alloc, 0, 1, buf, sizeof buf, &needed) == SG_OK);
  CHECK(std::string(buf) == "1");
  CHECK(needed == 2);
  CHECK(sg_allocation_entry(alloc, 0, 1, buf, 1, &needed) == SG_ERR_INVALID_ARGUMENT);
  CHECK(sg_allocation_entry(alloc, 5, 1, buf, sizeof buf, &needed) == SG_ERR_INVALID_ARGUMENT);

  sg_report* out = nullptr;
  int violation = 0;
  REQUIRE(sg_check_pareto(inst.p, alloc, &out) == SG_OK);
  auto verdict = take(out, &violation);
  CHECK(violation == 1);
  CHECK(verdict["verdict"] == "Inefficient");
  CHECK(verdict["witness"]["allocation"] == json::array({json::array({"1", "0"}), json::array({"0", "1"})}));
  REQUIRE(sg_check_envy(inst.p, alloc, &out) == SG_OK);
  CHECK(take(out, &violation)["violations"].size() == 2);
  CHECK(violation == 1);
  sg_allocation_free(alloc);

  const char* bad = R"({"allocation": [["1", "1"], ["0", "0"]]})";
  REQUIRE(sg_allocation_parse(inst.p, bad, std::string(bad).size(), &alloc) == SG_OK);
  CHECK(sg_check_pareto(inst.p, alloc, &out) == SG_ERR_INFEASIBLE_ALLOCATION);
  sg_allocation_free(alloc);
  const char* short_rows = R"({"allocation": [["1", "0"]]})";
  CHECK(sg_allocation_parse(inst.p, short_rows, std::string(short_rows).size(), &alloc) ==
        SG_ERR_DIMENSION_MISMATCH);
}

TEST_CASE("probes") {
  Instance inst(fixture("three_goods.json"));
  std::size_t agent = 0;
  REQUIRE(sg_instance_agent_index(inst.p, "1", &agent) == SG_OK);
  CHECK(sg_instance_agent_index(inst.p, "nobody", &agent) == SG_ERR_INVALID_ARGUMENT);
  sg_report* out = nullptr;
  int violation = 0;
  REQUIRE(sg_probe_sp(inst.p, 0, 0, &out) == SG_OK);
  auto sp = take(out, &violation);
  CHECK(violation == 1);
  CHECK(sp["hypothesis"]["sp_condition"] == false);
  CHECK(sp["probes"][0]["finding"]["bids"][0]["preference"] == json::array({"B", "A", "C"}));
  CHECK(sg_probe_sp(inst.p, SIZE_MAX, 2, &out) == SG_ERR_CAP_EXCEEDED);

  std::size_t coalition[] = {0, 1};
  REQUIRE(sg_probe_gsp(inst.p, coalition, 2, 0, &out) == SG_OK);
  CHECK(take(out, &violation)["finding"].is_null());
  CHECK(violation == 0);
  CHECK(sg_probe_gsp(inst.p, coalition, 2, 10, &out) == SG_ERR_CAP_EXCEEDED);

  REQUIRE(sg_hypothesis(inst.p, 1, &out) == SG_OK);
  CHECK(take(out)["sp_condition"] == false);
}

TEST_CASE("equitable allocations") {
  Instance inst(fixture("equity.json"));
  sg_report* out = nullptr;
  REQUIRE(sg_equitable(inst.p, 2, &out) == SG_OK);
  CHECK(take(out)["t_star"] == "1");
  CHECK(sg_equitable(inst.p, 4, &out) == SG_ERR_INVALID_ARGUMENT);
  REQUIRE(sg_lexi_equitable(inst.p, &out) == SG_OK);
  auto lexi = take(out);
  CHECK(lexi["beta"] == json::array({"1/2", "5/6", "1"}));
  CHECK(lexi["pareto"].contains("verdict"));
}

TEST_CASE("generation and stats are deterministic") {
  sg_instance* a = nullptr;
  sg_instance* b = nullptr;
  REQUIRE(sg_instance_generate(3, 3, 7, 1, &a) == SG_OK);
  REQUIRE(sg_instance_generate(3, 3, 7, 1, &b) == SG_OK);
  sg_report* ra = nullptr;
  sg_report* rb = nullptr;
  REQUIRE(sg_instance_to_json(a, &ra) == SG_OK);
  REQUIRE(sg_instance_to_json(b, &rb) == SG_OK);
  CHECK(std::string(sg_report_text(ra)) == std::string(sg_report_text(rb)));
  sg_report_free(ra);
  sg_report_free(rb);
  sg_instance_free(a);
  sg_instance_free(b);
  CHECK(sg_instance_generate(2, 3, 7, 1, &a) == SG_ERR_INVALID_ARGUMENT);

  std::size_t ks[] = {1};
  REQUIRE(sg_stats(3, 2, 2, 9, ks, 1, 0, &ra) == SG_OK);
  std::string csv = sg_report_text(ra);
  sg_report_free(ra);
  CHECK(csv.rfind("n,m,k,sample,beta_k,t_star\n", 0) == 0);
  REQUIRE(sg_stats(3, 2, 2, 9, ks, 1, 0, &ra) == SG_OK);
  CHECK(csv == sg_report_text(ra));
  sg_report_free(ra);
}
