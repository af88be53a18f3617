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
#include <cstdint>
#include <optional>
#include <vector>

#include "sgalloc/model.hpp"

namespace sgm {

/// A joint misreport by `coalition` (others truthful) that leaves every
/// member weakly better off under true preferences and `strictly_improved`
/// strictly better off.
struct ManipulationFinding {
  std::vector<std::size_t> coalition;
  std::vector<Permutation> joint_bids;  // parallel to coalition
  Allocation truthful_alloc;
  Allocation manipulated_alloc;
  std::vector<std::size_t> strictly_improved;
};

struct HypothesisReport {
  /// min_j q_j >= max_i r_i
  bool sp_holds_condition = false;
  /// min_j q_j >= the largest sum of `coalition_size` requirements
  bool gsp_condition = false;
};

struct ProbeOptions {
  /// Largest number of goods probe_sp will enumerate (m! bids).
  std::size_t max_goods = 6;
  /// Largest joint bid space (m!)^|S| probe_gsp will enumerate.
  std::uint64_t max_joint_bids = 1'000'000;
  /// Worker threads; 0 picks the hardware concurrency. Results do not
  /// depend on this value.
  unsigned workers = 0;
};

/// First bid (in lexicographic permutation order) with which `agent`
/// strictly lex-improves on its truthful share, others truthful.
std::optional<ManipulationFinding> probe_sp(const Instance& inst, std::size_t agent, const ProbeOptions& options = {});

/// First joint bid (coalition members sorted by index, first member most
/// significant) weakly improving all members and strictly improving one.
std::optional<ManipulationFinding> probe_gsp(const Instance& inst, std::vector<std::size_t> coalition,
                                             const ProbeOptions& options = {});

HypothesisReport hypothesis_report(const Instance& inst, std::size_t coalition_size);

/// The permutation of {0..m-1} with the given lexicographic rank.
Permutation permutation_at(std::size_t m, std::uint64_t rank);

/// Re-runs the mechanism and re-checks every claim of the finding; throws
/// std::logic_error on any mismatch.
void audit_finding(const Instance& inst, const ManipulationFinding& finding);

}  // namespace sgm
