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

#include "sgalloc/equity.hpp"

#include <stdexcept>

namespace sgm {

namespace {

Allocation extract_allocation(const Instance& inst, const LpSolution& sol) {
  const std::size_t m = inst.num_goods();
  Allocation alloc(inst.num_agents(), m);
  for (std::size_t i = 0; i < inst.num_agents(); ++i)
    for (std::size_t j = 0; j < m; ++j) alloc(i, j) = sol.values[i * m + j];
  return alloc;
}

LpSolution solve_or_throw(const LinearProgram& lp) {
  LpSolution sol = solve_lp(lp);
  // The allocation polytope is nonempty and t is bounded by 1.
  if (sol.status != LpStatus::Optimal) throw std::logic_error("equity program not optimal: " + to_string(sol.status));
  return sol;
}

}  // namespace

LinearProgram equity_program(const Instance& inst, std::size_t k, const BetaVector& floors) {
  const std::size_t n = inst.num_agents();
  const std::size_t m = inst.num_goods();
  if (k < 1 || k > m) throw Error(ErrorCode::InvalidArgument, "k must lie in [1, m]");
  const std::size_t t = n * m;
  LinearProgram lp(n * m + 1);
  lp.objective[t] = Rational(1);
  lp.direction = Direction::Maximize;

  for (std::size_t i = 0; i < n; ++i) {
    const auto& agent = inst.agents[i];
    const Rational weight = Rational(1) / agent.requirement;
    // t - (1/r_i) * top-k amount <= 0
    std::vector<Rational> row(lp.num_variables);
    row[t] = Rational(1);
    for (std::size_t l = 0; l < k; ++l) row[i * m + agent.preference[l]] = -weight;
    lp.add(std::move(row), Relation::LessEqual, Rational());

    for (std::size_t h = 1; h <= floors.size(); ++h) {
      std::vector<Rational> floor_row(lp.num_variables);
      for (std::size_t l = 0; l < h; ++l) floor_row[i * m + agent.preference[l]] = weight;
      lp.add(std::move(floor_row), Relation::GreaterEqual, floors[h - 1]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(lp.num_variables);
    for (std::size_t j = 0; j < m; ++j) row[i * m + j] = Rational(1);
    lp.add(std::move(row), Relation::Equal, inst.agents[i].requirement);
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Rational> row(lp.num_variables);
    for (std::size_t i = 0; i < n; ++i) row[i * m + j] = Rational(1);
    lp.add(std::move(row), Relation::Equal, inst.goods[j].quantity);
  }
  return lp;
}

EquitableResult equitable_top_k(const Instance& inst, std::size_t k) {
  require_valid(inst);
  LpSolution sol = solve_or_throw(equity_program(inst, k));
  return EquitableResult{extract_allocation(inst, sol), sol.objective};
}

LexiEquitableResult lexi_equitable(const Instance& inst) {
  require_valid(inst);
  BetaVector beta;
  LpSolution last;
  for (std::size_t k = 1; k <= inst.num_goods(); ++k) {
    last = solve_or_throw(equity_program(inst, k, beta));
    beta.push_back(last.objective);
  }
  return LexiEquitableResult{extract_allocation(inst, last), std::move(beta)};
}

}  // namespace sgm
