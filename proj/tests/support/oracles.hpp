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

#pragma once

// Independent brute-force oracles. None of these share code paths with the
// library routines they check: the LP oracle enumerates basic solutions by
// Gaussian elimination, the Pareto oracle searches a rational grid, and the
// mechanism oracle rescans every good at every event instead of keeping a
// priority queue.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "sgalloc/lp.hpp"
#include "sgalloc/model.hpp"

namespace sgm::oracle {

/// Best objective over all basic feasible solutions of an LP whose
/// variables are all nonnegative; nullopt when no feasible basis exists.
/// Only meaningful for bounded programs.
inline std::optional<Rational> lp_by_basis_enumeration(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables;
  // Equality form [A | slacks] x = b.
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::size_t slack_count = 0;
  for (const auto& c : lp.constraints)
    if (c.relation != Relation::Equal) ++slack_count;
  const std::size_t cols = n + slack_count;
  std::size_t s = n;
  for (const auto& c : lp.constraints) {
    std::vector<Rational> r(cols);
    for (std::size_t v = 0; v < n; ++v) r[v] = c.coefficients[v];
    if (c.relation == Relation::LessEqual) r[s++] = Rational(1);
    if (c.relation == Relation::GreaterEqual) r[s++] = Rational(-1);
    rows.push_back(std::move(r));
    rhs.push_back(c.rhs);
  }

  // Row-reduce to drop dependent rows (or detect inconsistency).
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    std::swap(rhs[p], rhs[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
      rhs[r] -= f * rhs[rank];
    }
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (!rhs[r].is_zero()) return std::nullopt;
  rows.resize(rank);
  rhs.resize(rank);

  std::optional<Rational> best;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> choose = [&](std::size_t from) {
    if (chosen.size() == rank) {
      // Solve rows * x_chosen = rhs.
      std::vector<std::vector<Rational>> m(rank, std::vector<Rational>(rank + 1));
      for (std::size_t r = 0; r < rank; ++r) {
        for (std::size_t k = 0; k < rank; ++k) m[r][k] = rows[r][chosen[k]];
        m[r][rank] = rhs[r];
      }
      for (std::size_t c = 0; c < rank; ++c) {
        std::size_t p = c;
        while (p < rank && m[p][c].is_zero()) ++p;
        if (p == rank) return;  // singular basis
        std::swap(m[p], m[c]);
        for (std::size_t r = 0; r < rank; ++r) {
          if (r == c || m[r][c].is_zero()) continue;
          Rational f = m[r][c] / m[c][c];
          for (std::size_t k = c; k <= rank; ++k) m[r][k] -= f * m[c][k];
        }
      }
      std::vector<Rational> x(cols);
      for (std::size_t k = 0; k < rank; ++k) {
        Rational v = m[k][rank] / m[k][k];
        if (v.sign() < 0) return;
        x[chosen[k]] = v;
      }
      Rational obj;
      for (std::size_t v = 0; v < n; ++v) obj += lp.objective[v] * x[v];
      bool better = !best || (lp.direction == Direction::Maximize ? obj > *best : obj < *best);
      if (better) best = obj;
      return;
    }
    for (std::size_t c = from; c < cols; ++c) {
      chosen.push_back(c);
      choose(c + 1);
      chosen.pop_back();
    }
  };
  if (rank == 0) {
    // No constraints left: only x = 0 is basic.
    return Rational();
  }
  choose(0);
  return best;
}

/// Enumerates every feasible allocation whose entries are multiples of
/// `step` and reports whether one lex-dominates `alloc` (all agents weakly
/// better under true preferences, one strictly).
inline bool dominated_on_grid(const Instance& inst, const Allocation& alloc, const Rational& step) {
  const std::size_t n = inst.num_agents(), m = inst.num_goods();
  Allocation cand(n, m);
  std::vector<Rational> col_left;
  for (const auto& g : inst.goods) col_left.push_back(g.quantity);
  bool found = false;
  std::function<void(std::size_t, std::size_t, Rational)> fill = [&](std::size_t i, std::size_t j, Rational row_left) {
    if (found) return;
    if (i == n) {
      for (const auto& c : col_left)
        if (!c.is_zero()) return;
      bool strict = false;
      for (std::size_t a = 0; a < n; ++a) {
        auto cmp = lex_compare(cand.share(a), alloc.share(a), inst.agents[a].preference);
        if (cmp == PrefOrdering::RightPreferred) return;
        if (cmp == PrefOrdering::LeftPreferred) strict = true;
      }
      found = strict;
      return;
    }
    if (j == m) {
      if (row_left.is_zero()) fill(i + 1, 0, i + 1 < n ? inst.agents[i + 1].requirement : Rational());
      return;
    }
    Rational cap = min(row_left, col_left[j]);
    for (Rational x; x <= cap; x += step) {
      cand(i, j) = x;
      col_left[j] -= x;
      fill(i, j + 1, row_left - x);
      col_left[j] += x;
    }
    cand(i, j) = Rational();
  };
  fill(0, 0, inst.agents[0].requirement);
  return found;
}

/// Mechanism run at constant speeds r_i by rescanning all goods at every
/// event. Returns the allocation and the sorted distinct exhaustion times.
struct NaiveRun {
  Allocation allocation;
  std::vector<Rational> termination_times;
};

inline NaiveRun naive_sg(const Instance& inst, const std::vector<Permutation>& bids) {
  const std::size_t n = inst.num_agents(), m = inst.num_goods();
  NaiveRun out{Allocation(n, m), std::vector<Rational>(m)};
  std::vector<Rational> left;
  for (const auto& g : inst.goods) left.push_back(g.quantity);
  std::vector<bool> gone(m, false);
  Rational now;
  std::size_t remaining = m;
  while (remaining > 0) {
    std::vector<std::size_t> current(n, m);
    std::vector<Rational> rate(m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t g : bids[i])
        if (!gone[g]) {
          current[i] = g;
          break;
        }
      if (current[i] < m) rate[current[i]] += inst.agents[i].requirement;
    }
    std::optional<Rational> dt;
    for (std::size_t g = 0; g < m; ++g)
      if (!gone[g] && rate[g].sign() > 0) {
        Rational t = left[g] / rate[g];
        if (!dt || t < *dt) dt = t;
      }
    for (std::size_t i = 0; i < n; ++i)
      if (current[i] < m) out.allocation(i, current[i]) += inst.agents[i].requirement * *dt;
    now += *dt;
    for (std::size_t g = 0; g < m; ++g) {
      if (gone[g]) continue;
      left[g] -= rate[g] * *dt;
      if (left[g].is_zero()) {
        gone[g] = true;
        out.termination_times[g] = now;
        --remaining;
      }
    }
  }
  return out;
}

}  // namespace sgm::oracle
