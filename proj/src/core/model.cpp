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

#include "sgalloc/model.hpp"

#include <algorithm>

namespace sgm {

Rational Instance::total_quantity() const {
  Rational total;
  for (const auto& g : goods) total += g.quantity;
  return total;
}

BidProfile BidProfile::truthful(const Instance& inst) {
  BidProfile profile;
  profile.bids.reserve(inst.num_agents());
  for (const auto& a : inst.agents) profile.bids.push_back(a.preference);
  return profile;
}

bool is_permutation_of(std::span<const std::size_t> perm, std::size_t m) {
  if (perm.size() != m) return false;
  std::vector<bool> seen(m, false);
  for (std::size_t g : perm) {
    if (g >= m || seen[g]) return false;
    seen[g] = true;
  }
  return true;
}

std::optional<InstanceIssue> validate_instance(const Instance& inst) {
  const std::size_t m = inst.num_goods();
  for (std::size_t j = 0; j < m; ++j)
    if (inst.goods[j].quantity.sign() <= 0)
      return InstanceIssue{ErrorCode::NonPositiveQuantity, j,
                           "good " + std::to_string(j) + " has non-positive quantity"};
  Rational requirements;
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    const auto& agent = inst.agents[i];
    if (agent.requirement.sign() <= 0)
      return InstanceIssue{ErrorCode::NonPositiveRequirement, i,
                           "agent " + std::to_string(i) + " has non-positive requirement"};
    if (!is_permutation_of(agent.preference, m))
      return InstanceIssue{ErrorCode::InvalidPermutation, i,
                           "agent " + std::to_string(i) + " preference is not a permutation of the goods"};
    requirements += agent.requirement;
  }
  Rational quantities = inst.total_quantity();
  if (quantities != requirements)
    return InstanceIssue{ErrorCode::SumMismatch, 0,
                         "total quantity " + quantities.str() + " differs from total requirement " +
                             requirements.str()};
  return std::nullopt;
}

void require_valid(const Instance& inst) {
  if (auto issue = validate_instance(inst)) throw Error(issue->code, issue->message, issue->index);
}

void require_valid_bids(const Instance& inst, const BidProfile& bids) {
  if (bids.bids.size() != inst.num_agents())
    throw Error(ErrorCode::InvalidBids, "bid profile has " + std::to_string(bids.bids.size()) +
                                            " bids for " + std::to_string(inst.num_agents()) + " agents");
  for (std::size_t i = 0; i < bids.bids.size(); ++i)
    if (!is_permutation_of(bids.bids[i], inst.num_goods()))
      throw Error(ErrorCode::InvalidBids, "bid of agent " + std::to_string(i) + " is not a full permutation", i);
}

std::optional<std::string> feasibility_issue(const Instance& inst, const Allocation& alloc) {
  const std::size_t n = inst.num_agents();
  const std::size_t m = inst.num_goods();
  if (alloc.num_agents() != n || alloc.num_goods() != m) return "allocation dimensions do not match the instance";
  std::vector<Rational> columns(m);
  for (std::size_t i = 0; i < n; ++i) {
    Rational row;
    for (std::size_t j = 0; j < m; ++j) {
      const Rational& x = alloc(i, j);
      if (x.sign() < 0) return "negative entry at (" + std::to_string(i) + ", " + std::to_string(j) + ")";
      row += x;
      columns[j] += x;
    }
    if (row != inst.agents[i].requirement)
      return "row " + std::to_string(i) + " sums to " + row.str() + ", expected " + inst.agents[i].requirement.str();
  }
  for (std::size_t j = 0; j < m; ++j)
    if (columns[j] != inst.goods[j].quantity)
      return "column " + std::to_string(j) + " sums to " + columns[j].str() + ", expected " +
             inst.goods[j].quantity.str();
  return std::nullopt;
}

void require_feasible(const Instance& inst, const Allocation& alloc) {
  if (auto issue = feasibility_issue(inst, alloc)) throw Error(ErrorCode::InfeasibleAllocation, *issue);
}

std::vector<Rational> sorted_share(std::span<const Rational> share, std::span<const std::size_t> pref) {
  if (share.size() != pref.size()) throw Error(ErrorCode::DimensionMismatch, "share and preference lengths differ");
  std::vector<Rational> out;
  out.reserve(pref.size());
  for (std::size_t g : pref) {
    if (g >= share.size()) throw Error(ErrorCode::DimensionMismatch, "preference refers to a missing good");
    out.push_back(share[g]);
  }
  return out;
}

std::vector<Rational> sorted_allocation(const Instance& inst, const Allocation& alloc, std::size_t agent) {
  return sorted_share(alloc.share(agent), inst.agents.at(agent).preference);
}

namespace {

void check_dims(std::span<const Rational> a, std::span<const Rational> b, std::span<const std::size_t> pref) {
  if (a.size() != b.size() || !is_permutation_of(pref, a.size()))
    throw Error(ErrorCode::DimensionMismatch, "shares must have equal length and pref must be a permutation of it");
}

}  // namespace

PrefOrdering lex_compare(std::span<const Rational> a, std::span<const Rational> b,
                         std::span<const std::size_t> pref) {
  check_dims(a, b, pref);
  for (std::size_t g : pref) {
    auto c = a[g] <=> b[g];
    if (c > 0) return PrefOrdering::LeftPreferred;
    if (c < 0) return PrefOrdering::RightPreferred;
  }
  return PrefOrdering::Equal;
}

PrefOrdering majorization_compare(std::span<const Rational> a, std::span<const Rational> b,
                                  std::span<const std::size_t> pref) {
  check_dims(a, b, pref);
  Rational prefix_a, prefix_b;
  bool a_ahead = false, b_ahead = false;
  for (std::size_t g : pref) {
    prefix_a += a[g];
    prefix_b += b[g];
    auto c = prefix_a <=> prefix_b;
    if (c > 0) a_ahead = true;
    if (c < 0) b_ahead = true;
  }
  if (a_ahead && b_ahead) return PrefOrdering::Incomparable;
  if (a_ahead) return PrefOrdering::LeftPreferred;
  if (b_ahead) return PrefOrdering::RightPreferred;
  return PrefOrdering::Equal;
}

BetaVector beta_vector(const Instance& inst, const Allocation& alloc) {
  require_feasible(inst, alloc);
  const std::size_t m = inst.num_goods();
  BetaVector beta(m);
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    const auto& agent = inst.agents[i];
    Rational prefix;
    for (std::size_t k = 0; k < m; ++k) {
      prefix += alloc(i, agent.preference[k]);
      Rational relative = prefix / agent.requirement;
      if (i == 0 || relative < beta[k]) beta[k] = relative;
    }
  }
  return beta;
}

Allocation transport_fill(std::span<const Rational> row_totals, std::span<const Rational> col_totals) {
  Allocation out(row_totals.size(), col_totals.size());
  std::vector<Rational> rows(row_totals.begin(), row_totals.end());
  std::vector<Rational> cols(col_totals.begin(), col_totals.end());
  std::size_t i = 0, j = 0;
  while (i < rows.size() && j < cols.size()) {
    if (rows[i].is_zero()) { ++i; continue; }
    if (cols[j].is_zero()) { ++j; continue; }
    Rational x = min(rows[i], cols[j]);
    out(i, j) += x;
    rows[i] -= x;
    cols[j] -= x;
  }
  return out;
}

}  // namespace sgm
