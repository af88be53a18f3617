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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgalloc/error.hpp"
#include "sgalloc/rational.hpp"

namespace sgm {

/// Goods listed from most to least preferred, as 0-based good indices.
using Permutation = std::vector<std::size_t>;

struct Good {
  std::string id;
  Rational quantity;

  friend bool operator==(const Good&, const Good&) = default;
};

struct Agent {
  std::string id;
  Rational requirement;
  Permutation preference;

  friend bool operator==(const Agent&, const Agent&) = default;
};

struct Instance {
  std::vector<Good> goods;
  std::vector<Agent> agents;

  std::size_t num_goods() const { return goods.size(); }
  std::size_t num_agents() const { return agents.size(); }
  /// Sum of all quantities (equal to the sum of requirements when valid).
  Rational total_quantity() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// One submitted preference list per agent.
struct BidProfile {
  std::vector<Permutation> bids;

  static BidProfile truthful(const Instance& inst);

  friend bool operator==(const BidProfile&, const BidProfile&) = default;
};

/// Dense n x m matrix of amounts, agent-major.
class Allocation {
 public:
  Allocation() = default;
  Allocation(std::size_t agents, std::size_t goods)
      : agents_(agents), goods_(goods), entries_(agents * goods) {}

  std::size_t num_agents() const { return agents_; }
  std::size_t num_goods() const { return goods_; }

  Rational& operator()(std::size_t agent, std::size_t good) { return entries_[agent * goods_ + good]; }
  const Rational& operator()(std::size_t agent, std::size_t good) const {
    return entries_[agent * goods_ + good];
  }

  std::span<const Rational> share(std::size_t agent) const {
    return {entries_.data() + agent * goods_, goods_};
  }

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::size_t agents_ = 0;
  std::size_t goods_ = 0;
  std::vector<Rational> entries_;
};

enum class PrefOrdering { LeftPreferred, RightPreferred, Equal, Incomparable };

/// beta[k-1] is the minimum, over agents, of the relative amount received
/// from the agent's top k goods.
using BetaVector = std::vector<Rational>;

struct InstanceIssue {
  ErrorCode code;
  std::size_t index;
  std::string message;
};

std::optional<InstanceIssue> validate_instance(const Instance& inst);
/// Throws Error with the issue's code when validate_instance fails.
void require_valid(const Instance& inst);

bool is_permutation_of(std::span<const std::size_t> perm, std::size_t m);
/// Throws InvalidBids unless there is one full permutation per agent.
void require_valid_bids(const Instance& inst, const BidProfile& bids);

/// Checks a_ij >= 0 and exact row/column sums.
std::optional<std::string> feasibility_issue(const Instance& inst, const Allocation& alloc);
void require_feasible(const Instance& inst, const Allocation& alloc);

/// The share reordered by pref.
std::vector<Rational> sorted_share(std::span<const Rational> share, std::span<const std::size_t> pref);
std::vector<Rational> sorted_allocation(const Instance& inst, const Allocation& alloc, std::size_t agent);

PrefOrdering lex_compare(std::span<const Rational> a, std::span<const Rational> b,
                         std::span<const std::size_t> pref);
PrefOrdering majorization_compare(std::span<const Rational> a, std::span<const Rational> b,
                                  std::span<const std::size_t> pref);

BetaVector beta_vector(const Instance& inst, const Allocation& alloc);

/// Northwest-corner fill of a transportation problem with the given row and
/// column totals (sums must agree). Rows and columns are visited in index
/// order, so the result is deterministic.
Allocation transport_fill(std::span<const Rational> row_totals, std::span<const Rational> col_totals);

}  // namespace sgm
