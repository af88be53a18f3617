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

#include "sgalloc/efficiency.hpp"

#include <optional>

namespace sgm {

namespace {

struct TimelineEntry {
  std::size_t agent;
  Rational start;
  Rational end;
};

// Partial allocation grown toward the target allocation one agent at a time.
struct SynthesisState {
  Allocation alpha;
  std::vector<Rational> stock;
  std::vector<Rational> filled;
  Rational clock;
  std::vector<TimelineEntry> timeline;
};

// Rank of the most preferred good with stock left.
std::optional<std::size_t> first_stocked_rank(const SynthesisState& state, const Permutation& pref) {
  for (std::size_t rank = 0; rank < pref.size(); ++rank)
    if (state.stock[pref[rank]].sign() > 0) return rank;
  return std::nullopt;
}

bool step(const Instance& inst, const Allocation& target, const Rational& total, SynthesisState& state) {
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    const auto& agent = inst.agents[i];
    if (state.filled[i] == agent.requirement) continue;
    auto rank = first_stocked_rank(state, agent.preference);
    if (!rank) continue;
    std::size_t g = agent.preference[*rank];
    if (state.alpha(i, g) >= target(i, g)) continue;
    Rational amount = target(i, g) - state.alpha(i, g);
    Rational end = state.clock + amount / total;
    if (!state.timeline.empty() && state.timeline.back().agent == i && state.timeline.back().end == state.clock)
      state.timeline.back().end = end;
    else
      state.timeline.push_back({i, state.clock, end});
    state.alpha(i, g) += amount;
    state.stock[g] -= amount;
    state.filled[i] += amount;
    state.clock = std::move(end);
    return true;
  }
  return false;
}

SpeedProfile assemble(const Instance& inst, const Rational& total, const std::vector<TimelineEntry>& timeline) {
  SpeedProfile profile;
  profile.agents.resize(inst.num_agents());
  const Rational zero, one(1);
  for (std::size_t i = 0; i < inst.num_agents(); ++i) {
    auto& segs = profile.agents[i];
    auto push = [&segs](const Rational& end, const Rational& rate) {
      if (!segs.empty() && segs.back().rate == rate)
        segs.back().end = end;
      else
        segs.push_back({end, rate});
    };
    Rational cursor;
    for (const auto& e : timeline) {
      if (e.agent != i) continue;
      if (cursor < e.start) push(e.start, zero);
      push(e.end, total);
      cursor = e.end;
    }
    if (cursor < one) push(one, zero);
  }
  return profile;
}

Inefficient build_witness(const Instance& inst, SynthesisState& state) {
  const std::size_t n = inst.num_agents();
  std::vector<std::size_t> blocking;
  std::vector<std::size_t> blocked_good(n);
  std::optional<Rational> slack;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& agent = inst.agents[i];
    if (state.filled[i] == agent.requirement) continue;
    std::size_t g = agent.preference[*first_stocked_rank(state, agent.preference)];
    blocking.push_back(i);
    blocked_good[i] = g;
    Rational room = min(state.stock[g], agent.requirement - state.filled[i]);
    if (!slack || room < *slack) slack = room;
  }
  Rational epsilon = *slack / Rational(static_cast<long>(2 * blocking.size()));
  for (std::size_t i : blocking) {
    state.alpha(i, blocked_good[i]) += epsilon;
    state.stock[blocked_good[i]] -= epsilon;
    state.filled[i] += epsilon;
  }
  std::vector<Rational> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = inst.agents[i].requirement - state.filled[i];
  Allocation rest = transport_fill(rows, state.stock);
  Allocation witness = state.alpha;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < inst.num_goods(); ++j) witness(i, j) += rest(i, j);
  return Inefficient{std::move(witness), std::move(blocking)};
}

}  // namespace

ParetoVerdict check_pareto(const Instance& inst, const Allocation& alloc) {
  require_valid(inst);
  require_feasible(inst, alloc);
  const Rational total = inst.total_quantity();
  SynthesisState state{Allocation(inst.num_agents(), inst.num_goods()), {}, std::vector<Rational>(inst.num_agents()),
                       Rational(), {}};
  for (const auto& g : inst.goods) state.stock.push_back(g.quantity);

  while (step(inst, alloc, total, state)) {
  }

  for (std::size_t i = 0; i < inst.num_agents(); ++i)
    if (state.filled[i] != inst.agents[i].requirement) return build_witness(inst, state);
  return Efficient{assemble(inst, total, state.timeline)};
}

SpeedProfile synthesize_speeds(const Instance& inst, const Allocation& alloc) {
  auto verdict = check_pareto(inst, alloc);
  if (auto* eff = std::get_if<Efficient>(&verdict)) return std::move(eff->certificate);
  throw Error(ErrorCode::NotParetoEfficient, "allocation is not Pareto efficient");
}

EnvyReport check_envy(const Instance& inst, const Allocation& alloc) {
  require_feasible(inst, alloc);
  EnvyReport report;
  const std::size_t n = inst.num_agents();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& agent = inst.agents[i];
    for (std::size_t other = 0; other < n; ++other) {
      if (other == i) continue;
      const Rational& other_req = inst.agents[other].requirement;
      Rational own, theirs;
      for (std::size_t k = 0; k < agent.preference.size(); ++k) {
        std::size_t g = agent.preference[k];
        own += alloc(i, g) / agent.requirement;
        theirs += alloc(other, g) / other_req;
        if (own < theirs) {
          report.violations.push_back({i, other, k + 1});
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace sgm
