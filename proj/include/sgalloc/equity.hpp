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

#include <cstddef>

#include "sgalloc/lp.hpp"
#include "sgalloc/model.hpp"

namespace sgm {

struct EquitableResult {
  Allocation allocation;
  /// Optimal minimum relative amount from every agent's top k goods.
  Rational t_star;
};

/// Maximizes min_i (1/r_i) * sum_{l<=k} x_{i,pi_i(l)} over all allocations.
EquitableResult equitable_top_k(const Instance& inst, std::size_t k);

struct LexiEquitableResult {
  Allocation allocation;
  BetaVector beta;
};

/// Lexicographically maximizes (beta_1, ..., beta_m) by solving one program
/// per prefix length, each pinning the earlier optima as lower bounds. The
/// beta vector is unique; the allocation is the last program's basic
/// solution and need not be.
LexiEquitableResult lexi_equitable(const Instance& inst);

/// The program behind equitable_top_k with extra floors: for every h in
/// [1, floors.size()] and every agent, the top-h relative amount is at least
/// floors[h-1]. Variable x_ij sits at index i*m + j, t at index n*m.
LinearProgram equity_program(const Instance& inst, std::size_t k, const BetaVector& floors = {});

}  // namespace sgm
