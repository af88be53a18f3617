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

#include "sgalloc/probes.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "sgalloc/engine.hpp"

namespace sgm {

namespace {

constexpr std::uint64_t kNotFound = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kChunk = 64;

// Smallest index in [0, count) satisfying pred. Workers claim chunks in
// order and skip any chunk that starts past the best hit so far, so the
// answer is the same for every worker count and schedule.
std::uint64_t first_match(std::uint64_t count, unsigned workers,
                          const std::function<bool(std::uint64_t)>& pred) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t chunks = (count + kChunk - 1) / kChunk;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(chunks, 1)));
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> best{kNotFound};

  auto work = [&] {
    for (;;) {
      std::uint64_t c = next_chunk.fetch_add(1);
      if (c >= chunks) return;
      std::uint64_t begin = c * kChunk;
      if (begin >= best.load()) return;
      std::uint64_t end = std::min(count, begin + kChunk);
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        if (!pred(idx)) continue;
        std::uint64_t seen = best.load();
        while (idx < seen && !best.compare_exchange_weak(seen, idx)) {
        }
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return best.load();
}

std::uint64_t factorial(std::size_t m) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= m; ++k) f *= k;
  return f;
}

RunResult run_quiet(const Instance& inst, const BidProfile& bids) {
  return run_sg(inst, bids, RunOptions{.keep_segments = false});
}

struct Outcome {
  bool all_weak = true;
  std::vector<std::size_t> strict;
};

Outcome compare_members(const Instance& inst, const std::vector<std::size_t>& members, const Allocation& truthful,
                        const Allocation& manipulated) {
  Outcome out;
  for (std::size_t i : members) {
    auto cmp = lex_compare(manipulated.share(i), truthful.share(i), inst.agents[i].preference);
    if (cmp == PrefOrdering::RightPreferred) out.all_weak = false;
    if (cmp == PrefOrdering::LeftPreferred) out.strict.push_back(i);
  }
  return out;
}

}  // namespace

Permutation permutation_at(std::size_t m, std::uint64_t rank) {
  Permutation pool(m);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  Permutation out;
  out.reserve(m);
  for (std::size_t k = m; k > 0; --k) {
    std::uint64_t f = factorial(k - 1);
    std::size_t digit = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return out;
}

void audit_finding(const Instance& inst, const ManipulationFinding& finding) {
  BidProfile truthful = BidProfile::truthful(inst);
  BidProfile bids = truthful;
  for (std::size_t k = 0; k < finding.coalition.size(); ++k) bids.bids[finding.coalition[k]] = finding.joint_bids[k];
  if (run_quiet(inst, truthful).allocation != finding.truthful_alloc)
    throw std::logic_error("finding audit: truthful allocation does not replay");
  if (run_quiet(inst, bids).allocation != finding.manipulated_alloc)
    throw std::logic_error("finding audit: manipulated allocation does not replay");
  auto outcome = compare_members(inst, finding.coalition, finding.truthful_alloc, finding.manipulated_alloc);
  if (!outcome.all_weak || outcome.strict.empty() || outcome.strict != finding.strictly_improved)
    throw std::logic_error("finding audit: claimed improvement does not hold");
}

std::optional<ManipulationFinding> probe_sp(const Instance& inst, std::size_t agent, const ProbeOptions& options) {
  require_valid(inst);
  if (agent >= inst.num_agents()) throw Error(ErrorCode::InvalidArgument, "agent index out of range", agent);
  const std::size_t m = inst.num_goods();
  if (m > options.max_goods)
    throw Error(ErrorCode::CapExceeded,
                std::to_string(m) + " goods exceeds the strategy-proofness probe cap of " +
                    std::to_string(options.max_goods));
  ProbeOptions single = options;
  single.max_joint_bids = std::numeric_limits<std::uint64_t>::max();
  return probe_gsp(inst, {agent}, single);
}

std::optional<ManipulationFinding> probe_gsp(const Instance& inst, std::vector<std::size_t> coalition,
                                             const ProbeOptions& options) {
  require_valid(inst);
  std::sort(coalition.begin(), coalition.end());
  coalition.erase(std::unique(coalition.begin(), coalition.end()), coalition.end());
  for (std::size_t i : coalition)
    if (i >= inst.num_agents()) throw Error(ErrorCode::InvalidArgument, "coalition member out of range", i);
  if (coalition.empty()) return std::nullopt;

  const std::size_t m = inst.num_goods();
  const std::uint64_t per_member = factorial(m);
  std::uint64_t space = 1;
  for (std::size_t k = 0; k < coalition.size(); ++k) {
    if (space > options.max_joint_bids / per_member)
      throw Error(ErrorCode::CapExceeded, "joint bid space exceeds the cap of " + std::to_string(options.max_joint_bids));
    space *= per_member;
  }

  const BidProfile truthful_bids = BidProfile::truthful(inst);
  const Allocation truthful = run_quiet(inst, truthful_bids).allocation;

  auto bids_for = [&](std::uint64_t index) {
    BidProfile bids = truthful_bids;
    for (std::size_t k = coalition.size(); k-- > 0;) {
      bids.bids[coalition[k]] = permutation_at(m, index % per_member);
      index /= per_member;
    }
    return bids;
  };

  std::uint64_t hit = first_match(space, options.workers, [&](std::uint64_t index) {
    Allocation manipulated = run_quiet(inst, bids_for(index)).allocation;
    auto outcome = compare_members(inst, coalition, truthful, manipulated);
    return outcome.all_weak && !outcome.strict.empty();
  });
  if (hit == kNotFound) return std::nullopt;

  BidProfile bids = bids_for(hit);
  ManipulationFinding finding;
  finding.coalition = coalition;
  for (std::size_t i : coalition) finding.joint_bids.push_back(bids.bids[i]);
  finding.truthful_alloc = truthful;
  finding.manipulated_alloc = run_quiet(inst, bids).allocation;
  finding.strictly_improved = compare_members(inst, coalition, truthful, finding.manipulated_alloc).strict;
  audit_finding(inst, finding);
  return finding;
}

HypothesisReport hypothesis_report(const Instance& inst, std::size_t coalition_size) {
  require_valid(inst);
  if (coalition_size < 1 || coalition_size > inst.num_agents())
    throw Error(ErrorCode::InvalidArgument, "coalition size must lie in [1, n]");
  Rational min_q = inst.goods.front().quantity;
  for (const auto& g : inst.goods) min_q = min(min_q, g.quantity);
  std::vector<Rational> reqs;
  for (const auto& a : inst.agents) reqs.push_back(a.requirement);
  std::sort(reqs.begin(), reqs.end(), std::greater<>());
  Rational largest_sum;
  for (std::size_t k = 0; k < coalition_size; ++k) largest_sum += reqs[k];
  return HypothesisReport{min_q >= reqs.front(), min_q >= largest_sum};
}

}  // namespace sgm
