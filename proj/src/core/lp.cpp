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

#include "sgalloc/lp.hpp"

#include <optional>

#include "sgalloc/error.hpp"

namespace sgm {

namespace {

// Dense tableau B^-1 [A | b] plus a reduced-cost row for minimization.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs, std::vector<std::size_t> basis)
      : rows_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return rows_.empty() ? 0 : rows_.front().size(); }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const Rational& rhs(std::size_t r) const { return rhs_[r]; }
  const Rational& at(std::size_t r, std::size_t c) const { return rows_[r][c]; }

  void set_costs(const std::vector<Rational>& costs) {
    reduced_ = costs;
    value_ = Rational();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& cb = costs[basis_[r]];
      if (cb.is_zero()) continue;
      for (std::size_t c = 0; c < reduced_.size(); ++c)
        if (!rows_[r][c].is_zero()) reduced_[c] -= cb * rows_[r][c];
      value_ += cb * rhs_[r];
    }
  }

  const Rational& objective_value() const { return value_; }

  enum class Outcome { Optimal, Unbounded };

  // Bland's rule: lowest-index improving column enters; ratio ties leave by
  // lowest basic variable index.
  Outcome optimize(std::size_t usable_cols) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t c = 0; c < usable_cols; ++c)
        if (reduced_[c].sign() < 0) {
          entering = c;
          break;
        }
      if (!entering) return Outcome::Optimal;
      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational& a = rows_[r][*entering];
        if (a.sign() <= 0) continue;
        Rational ratio = rhs_[r] / a;
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[*leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (!leaving) return Outcome::Unbounded;
      pivot(*leaving, *entering);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational inv = Rational(1) / rows_[row][col];
    auto& pr = rows_[row];
    for (auto& x : pr)
      if (!x.is_zero()) x *= inv;
    rhs_[row] *= inv;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r == row || rows_[r][col].is_zero()) continue;
      const Rational f = rows_[r][col];
      for (std::size_t c = 0; c < pr.size(); ++c)
        if (!pr[c].is_zero()) rows_[r][c] -= f * pr[c];
      rhs_[r] -= f * rhs_[row];
    }
    if (!reduced_.empty() && !reduced_[col].is_zero()) {
      const Rational f = reduced_[col];
      for (std::size_t c = 0; c < pr.size(); ++c)
        if (!pr[c].is_zero()) reduced_[c] -= f * pr[c];
      value_ += f * rhs_[row];
    }
    basis_[row] = col;
  }

  void drop_row(std::size_t row) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(row));
    rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(row));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(row));
  }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> reduced_;
  Rational value_;
};

void check_shape(const LinearProgram& lp) {
  const std::size_t n = lp.num_variables;
  if (lp.nonnegative.size() != n) throw Error(ErrorCode::MalformedProgram, "nonnegativity flags do not match variables");
  if (lp.objective.size() != n) throw Error(ErrorCode::MalformedProgram, "objective length does not match variables");
  for (std::size_t r = 0; r < lp.constraints.size(); ++r)
    if (lp.constraints[r].coefficients.size() != n)
      throw Error(ErrorCode::MalformedProgram, "constraint length does not match variables", r);
}

}  // namespace

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

LpSolution solve_lp(const LinearProgram& lp) {
  check_shape(lp);
  const std::size_t n = lp.num_variables;
  const std::size_t m = lp.constraints.size();

  // Structural columns: x+ for every variable, x- for free ones.
  std::vector<std::size_t> plus_col(n), minus_col(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t v = 0; v < n; ++v) {
    plus_col[v] = cols++;
    if (!lp.nonnegative[v]) minus_col[v] = cols++;
  }
  const std::size_t structural = cols;
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t r = 0; r < m; ++r)
    if (lp.constraints[r].relation != Relation::Equal) slack_col[r] = cols++;
  const std::size_t real_cols = cols;

  std::vector<std::vector<Rational>> rows(m);
  std::vector<Rational> rhs(m);
  std::vector<std::size_t> basis(m, SIZE_MAX);
  std::vector<bool> needs_artificial(m, false);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& con = lp.constraints[r];
    auto& row = rows[r];
    row.assign(real_cols, Rational());
    for (std::size_t v = 0; v < n; ++v) {
      row[plus_col[v]] = con.coefficients[v];
      if (minus_col[v] != SIZE_MAX) row[minus_col[v]] = -con.coefficients[v];
    }
    if (con.relation == Relation::LessEqual) row[slack_col[r]] = Rational(1);
    if (con.relation == Relation::GreaterEqual) row[slack_col[r]] = Rational(-1);
    rhs[r] = con.rhs;
    if (rhs[r].sign() < 0) {
      for (auto& x : row) x = -x;
      rhs[r] = -rhs[r];
    }
    if (slack_col[r] != SIZE_MAX && row[slack_col[r]] == Rational(1))
      basis[r] = slack_col[r];
    else
      needs_artificial[r] = true;
  }
  std::size_t total_cols = real_cols;
  for (std::size_t r = 0; r < m; ++r)
    if (needs_artificial[r]) basis[r] = total_cols++;
  for (std::size_t r = 0; r < m; ++r) {
    rows[r].resize(total_cols);
    if (needs_artificial[r]) rows[r][basis[r]] = Rational(1);
  }

  Tableau tab(std::move(rows), std::move(rhs), std::move(basis));

  if (total_cols > real_cols) {
    std::vector<Rational> phase1(total_cols);
    for (std::size_t c = real_cols; c < total_cols; ++c) phase1[c] = Rational(1);
    tab.set_costs(phase1);
    tab.optimize(total_cols);
    if (tab.objective_value().sign() > 0) return LpSolution{LpStatus::Infeasible, {}, {}};
    // Pivot zero-level artificials out; rows with no real column left are redundant.
    for (std::size_t r = 0; r < tab.num_rows();) {
      if (tab.basis()[r] < real_cols) {
        ++r;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t c = 0; c < real_cols && !col; ++c)
        if (!tab.at(r, c).is_zero()) col = c;
      if (col) {
        tab.pivot(r, *col);
        ++r;
      } else {
        tab.drop_row(r);
      }
    }
  }

  std::vector<Rational> costs(total_cols);
  const bool maximize = lp.direction == Direction::Maximize;
  for (std::size_t v = 0; v < n; ++v) {
    Rational c = maximize ? -lp.objective[v] : lp.objective[v];
    if (minus_col[v] != SIZE_MAX) costs[minus_col[v]] = -c;
    costs[plus_col[v]] = std::move(c);
  }
  tab.set_costs(costs);
  if (tab.optimize(real_cols) == Tableau::Outcome::Unbounded) return LpSolution{LpStatus::Unbounded, {}, {}};

  std::vector<Rational> column_values(structural);
  for (std::size_t r = 0; r < tab.num_rows(); ++r)
    if (tab.basis()[r] < structural) column_values[tab.basis()[r]] = tab.rhs(r);
  LpSolution sol{LpStatus::Optimal, std::vector<Rational>(n), Rational()};
  for (std::size_t v = 0; v < n; ++v) {
    sol.values[v] = column_values[plus_col[v]];
    if (minus_col[v] != SIZE_MAX) sol.values[v] -= column_values[minus_col[v]];
    sol.objective += lp.objective[v] * sol.values[v];
  }
  return sol;
}

}  // namespace sgm
