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
#include <variant>
#include <vector>

#include "sgalloc/engine.hpp"
#include "sgalloc/model.hpp"

namespace sgm {

/// Speed functions under which the extended mechanism with truthful bids
/// reproduces the checked allocation.
struct Efficient {
  SpeedProfile certificate;
};

/// A feasible allocation every agent weakly prefers, strictly so for the
/// agents in `blocking`.
struct Inefficient {
  Allocation witness;
  std::vector<std::size_t> blocking;
};

using ParetoVerdict = std::variant<Efficient, Inefficient>;

/// Pareto efficiency w.r.t. lexicographic preferences under the true
/// preference lists. Runs the one-agent-at-a-time speed synthesis: at each
/// step the lowest-index agent whose top good with stock left is still below
/// its target eats it alone at rate sum(q) until the target is met. Reaching
/// time 1 yields a certificate; getting stuck yields a dominating witness.
ParetoVerdict check_pareto(const Instance& inst, const Allocation& alloc);

/// The certificate of check_pareto; throws NotParetoEfficient otherwise.
SpeedProfile synthesize_speeds(const Instance& inst, const Allocation& alloc);

struct EnvyViolation {
  std::size_t agent;
  std::size_t other;
  std::size_t prefix;  // first violated prefix length k, 1-based

  friend bool operator==(const EnvyViolation&, const EnvyViolation&) = default;
};

/// Ordered pairs (i, i') where agent i fails to weakly majorization-prefer
/// its own relative share to agent i''s relative share (both sorted by i's
/// preference).
struct EnvyReport {
  std::vector<EnvyViolation> violations;

  bool envy_free() const { return violations.empty(); }
};

EnvyReport check_envy(const Instance& inst, const Allocation& alloc);

}  // namespace sgm
