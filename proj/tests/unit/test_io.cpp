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

#include <functional>
#include <random>
#include <string>

#include "doctest.h"
#include "sgalloc/efficiency.hpp"
#include "sgalloc/engine.hpp"
#include "sgalloc/io.hpp"
#include "support/fixtures.hpp"

using namespace sgm;
using sgm::testing::R;

namespace {

const char* kThreeGoods = R"({
  "goods": [
    {"id": "A", "quantity": "1"},
    {"id": "B", "quantity": "1"},
    {"id": "C", "quantity": "1"}
  ],
  "agents": [
    {"id": "1", "requirement": "3/2", "preference": ["A", "B", "C"]},
    {"id": "2", "requirement": "3/2", "preference": ["B", "C", "A"]}
  ]
})";

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("instance files parse into the expected model") {
  auto inst = io::parse_instance(kThreeGoods);
  CHECK(inst == testing::three_good_manipulation());
}

TEST_CASE("instance round trip is lossless") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = testing::random_instance(rng, 1 + trial % 5, 1 + (trial / 5) % 5);
    auto text = io::emit_instance(inst);
    CHECK(io::parse_instance(text) == inst);
    CHECK(io::emit_instance(io::parse_instance(text)) == text);
  }
}

TEST_CASE("instance file errors") {
  std::string base = kThreeGoods;
  CHECK(code_of([&] { io::parse_instance(replace(base, R"("quantity": "1"})", R"("quantity": "0"})")); }) ==
        ErrorCode::NonPositiveQuantity);
  CHECK(code_of([&] { io::parse_instance(replace(base, R"("quantity": "1"})", R"("quantity": "1/0"})")); }) ==
        ErrorCode::SyntaxError);
  CHECK(code_of([&] { io::parse_instance(replace(base, R"("3/2")", R"("1")")); }) == ErrorCode::SumMismatch);
  CHECK(code_of([&] { io::parse_instance(replace(base, R"(["A", "B", "C"])", R"(["A", "A", "C"])")); }) ==
        ErrorCode::InvalidPermutation);
  CHECK(code_of([&] { io::parse_instance(replace(base, R"(["A", "B", "C"])", R"(["A", "B", "D"])")); }) ==
        ErrorCode::SyntaxError);
  CHECK(code_of([&] { io::parse_instance(replace(base, R"("id": "B")", R"("id": "A")")); }) ==
        ErrorCode::SyntaxError);
  CHECK(code_of([&] { io::parse_instance(R"({"goods": []})"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([&] { io::parse_instance(R"({"goods": [{"id": "A", "quantity": 1}], "agents": []})"); }) ==
        ErrorCode::SyntaxError);
}

TEST_CASE("syntax errors report line and column") {
  try {
    io::parse_instance("{\n  \"goods\": [,]\n}");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(std::string(e.what()).find("line 2, column") != std::string::npos);
  }
  try {
    io::parse_instance(replace(kThreeGoods, R"("quantity": "1"})", R"("quantity": "x"})"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/goods/0/quantity") != std::string::npos);
  }
}

TEST_CASE("bid files") {
  auto inst = io::parse_instance(kThreeGoods);
  auto bids = io::parse_bids(inst, R"({"bids": [{"agent": "1", "preference": ["B", "A", "C"]}]})");
  CHECK(bids.bids[0] == Permutation{1, 0, 2});
  CHECK(bids.bids[1] == inst.agents[1].preference);
  CHECK(code_of([&] { io::parse_bids(inst, R"({"bids": [{"agent": "1", "preference": ["B", "A"]}]})"); }) ==
        ErrorCode::InvalidBids);
  CHECK(code_of([&] { io::parse_bids(inst, R"({"bids": [{"agent": "9", "preference": ["B", "A", "C"]}]})"); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("speed files round trip") {
  auto inst = testing::variable_speed_example();
  auto speeds = testing::variable_speed_profile();
  auto text = io::dump(io::speeds_to_json(inst, speeds));
  CHECK(io::parse_speeds(inst, text) == speeds);
  auto bad = R"({"speeds": [{"agent": "a1", "segments": [{"end": "1", "rate": "2"}]}]})";
  CHECK(code_of([&] { io::parse_speeds(inst, bad); }) == ErrorCode::SpeedIntegralMismatch);
}

TEST_CASE("allocation files") {
  auto inst = io::parse_instance(kThreeGoods);
  auto alloc = io::parse_allocation(inst, R"({"allocation": [["1", "0", "1/2"], ["0", "1", "1/2"]]})");
  CHECK(alloc(0, 2) == R(1, 2));
  CHECK(code_of([&] { io::parse_allocation(inst, R"({"allocation": [["1", "0", "1/2"]]})"); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { io::parse_allocation(inst, R"({"allocation": [["1", "0"], ["0", "1"]]})"); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("run report contents re-parse to the computed allocation") {
  auto inst = io::parse_instance(kThreeGoods);
  auto res = run_sg(inst, BidProfile::truthful(inst));
  auto report = io::run_report(inst, res, true);
  io::json wrapper = {{"allocation", report["allocation"]}};
  CHECK(io::parse_allocation(inst, wrapper.dump()) == res.allocation);
  CHECK(report["sorted_allocation"][0] == io::json::array({"1", "0", "1/2"}));
  CHECK(report["events"][0]["time"] == "2/3");
  CHECK(report["events"][0]["goods"] == io::json::array({"A", "B"}));
  CHECK(report["beta"] == io::json::array({"2/3", "2/3", "1"}));
  CHECK(report["trace"].size() == 2);
  CHECK_FALSE(io::run_report(inst, res, false).contains("trace"));
}

TEST_CASE("pareto report carries the certificate or the witness") {
  auto inst = testing::make_instance({R(1), R(1)}, {R(1), R(1)}, {{0, 1}, {1, 0}});
  Allocation swapped(2, 2);
  swapped(0, 1) = R(1);
  swapped(1, 0) = R(1);
  auto bad = io::pareto_report(inst, check_pareto(inst, swapped));
  CHECK(bad["verdict"] == "Inefficient");
  CHECK(bad["witness"]["allocation"] == io::json::array({io::json::array({"1", "0"}), io::json::array({"0", "1"})}));
  auto good = io::pareto_report(inst, check_pareto(inst, run_sg(inst, BidProfile::truthful(inst)).allocation));
  CHECK(good["verdict"] == "Efficient");
  CHECK(io::parse_speeds(inst, good["certificate"].dump()).agents.size() == 2);
}
