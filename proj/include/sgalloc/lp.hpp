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
#include <string>
#include <vector>

#include "sgalloc/rational.hpp"

namespace sgm {

enum class Relation { LessEqual, GreaterEqual, Equal };
enum class Direction { Maximize, Minimize };

struct LinearConstraint {
  std::vector<Rational> coefficients;  // one per variable
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

/// Dense linear program over exact rationals.
struct LinearProgram {
  std::size_t num_variables = 0;
  /// Variables flagged false are free (may take negative values).
  std::vector<bool> nonnegative;
  std::vector<LinearConstraint> constraints;
  std::vector<Rational> objective;
  Direction direction = Direction::Maximize;

  explicit LinearProgram(std::size_t variables = 0)
      : num_variables(variables), nonnegative(variables, true), objective(variables) {}

  void add(std::vector<Rational> coefficients, Relation relation, Rational rhs) {
    constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> values;  // populated when Optimal
  Rational objective;
};

/// Two-phase dense-tableau simplex with Bland's rule. Exact; throws
/// MalformedProgram on dimension errors.
LpSolution solve_lp(const LinearProgram& lp);

std::string to_string(LpStatus status);

}  // namespace sgm
