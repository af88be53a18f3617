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

#include "sgalloc/engine.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace sgm {

SpeedProfile SpeedProfile::constant(const Instance& inst) {
  SpeedProfile profile;
  profile.agents.reserve(inst.num_agents());
  for (const auto& a : inst.agents) profile.agents.push_back({SpeedSegment{Rational(1), a.requirement}});
  return profile;
}

void require_valid_speeds(const Instance& inst, const SpeedProfile& speeds) {
  if (speeds.agents.size() != inst.num_agents())
    throw Error(ErrorCode::InvalidSpeedSegments, "speed profile does not have one entry per agent");
  for (std::size_t i = 0; i < speeds.agents.size(); ++i) {
    const auto& segs = speeds.agents[i];
    if (segs.empty()) throw Error(ErrorCode::InvalidSpeedSegments, "agent has no speed segments", i);
    Rational prev, integral;
    for (const auto& s : segs) {
      if (s.end <= prev) throw Error(ErrorCode::InvalidSpeedSegments, "segment end times must strictly increase", i);
      if (s.rate.sign() < 0) throw Error(ErrorCode::InvalidSpeedSegments, "negative speed", i);
      integral += (s.end - prev) * s.rate;
      prev = s.end;
    }
    if (prev != Rational(1)) throw Error(ErrorCode::InvalidSpeedSegments, "last segment must end at 1", i);
    if (integral != inst.agents[i].requirement)
      throw Error(ErrorCode::SpeedIntegralMismatch,
                  "speed integral " + integral.str() + " differs from requirement " + inst.agents[i].requirement.str(), i);
  }
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct GoodState {
  Rational remaining;
  Rational updated_at;
  Rational rate;
  bool exhausted = false;
  std::uint64_t version = 0;
  std::vector<std::size_t> consumers;
};

struct AgentState {
  std::size_t rank = 0;
  std::size_t good = kNone;
  std::size_t speed_index = 0;
  Rational rate;
  Rational segment_start;
};

struct Projection {
  Rational time;
  std::size_t good;
  std::uint64_t version;
};

struct LaterFirst {
  bool operator()(const Projection& a, const Projection& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.good > b.good;
  }
};

struct Breakpoint {
  Rational time;
  std::size_t agent;
};

class Simulation {
 public:
  Simulation(const Instance& inst, const BidProfile& bids, const SpeedProfile& speeds, const RunOptions& options)
      : inst_(inst), bids_(bids), speeds_(speeds), options_(options),
        goods_(inst.num_goods()), agents_(inst.num_agents()),
        result_{Allocation(inst.num_agents(), inst.num_goods()), Trace{}} {
    result_.trace.termination_times.resize(inst.num_goods());
    if (options_.keep_segments) result_.trace.segments.resize(inst.num_agents());
    for (std::size_t j = 0; j < goods_.size(); ++j) goods_[j].remaining = inst.goods[j].quantity;
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      const auto& segs = speeds_.agents[i];
      for (std::size_t s = 0; s + 1 < segs.size(); ++s) breakpoints_.push_back({segs[s].end, i});
    }
    std::sort(breakpoints_.begin(), breakpoints_.end(), [](const Breakpoint& a, const Breakpoint& b) {
      if (a.time != b.time) return a.time < b.time;
      return a.agent < b.agent;
    });
  }

  RunResult run() {
    const Rational zero;
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      agents_[i].rate = speeds_.agents[i].front().rate;
      select(i, zero);
    }
    std::size_t exhausted = 0;
    std::size_t next_bp = 0;
    while (exhausted < goods_.size()) {
      drop_stale();
      bool have_exhaustion = !queue_.empty();
      bool have_bp = next_bp < breakpoints_.size();
      if (!have_exhaustion && !have_bp)
        throw std::logic_error("simulation stalled with goods remaining");
      if (have_exhaustion && (!have_bp || queue_.top().time <= breakpoints_[next_bp].time)) {
        exhausted += exhaust_at(Rational(queue_.top().time));
      } else {
        Rational t = breakpoints_[next_bp].time;
        while (next_bp < breakpoints_.size() && breakpoints_[next_bp].time == t)
          change_rate(breakpoints_[next_bp++].agent, t);
      }
    }
    for (std::size_t i = 0; i < agents_.size(); ++i) close_segment(i, now_);
    return std::move(result_);
  }

 private:
  void advance(std::size_t g, const Rational& t) {
    auto& good = goods_[g];
    if (!good.rate.is_zero()) good.remaining -= good.rate * (t - good.updated_at);
    good.updated_at = t;
  }

  void reproject(std::size_t g) {
    auto& good = goods_[g];
    ++good.version;
    if (good.rate.sign() > 0) queue_.push({good.updated_at + good.remaining / good.rate, g, good.version});
  }

  void drop_stale() {
    while (!queue_.empty() && goods_[queue_.top().good].version != queue_.top().version) queue_.pop();
  }

  // Point agent i at its highest-bid good that is not exhausted.
  void select(std::size_t i, const Rational& t) {
    auto& agent = agents_[i];
    const auto& bid = bids_.bids[i];
    while (agent.rank < bid.size() && goods_[bid[agent.rank]].exhausted) {
      ++agent.rank;
      ++result_.trace.switch_count;
    }
    agent.segment_start = t;
    if (agent.rank == bid.size()) {
      agent.good = kNone;
      return;
    }
    std::size_t g = bid[agent.rank];
    agent.good = g;
    advance(g, t);
    goods_[g].rate += agent.rate;
    goods_[g].consumers.push_back(i);
    reproject(g);
  }

  void close_segment(std::size_t i, const Rational& t) {
    auto& agent = agents_[i];
    if (agent.good == kNone || t <= agent.segment_start) return;
    if (!agent.rate.is_zero()) result_.allocation(i, agent.good) += agent.rate * (t - agent.segment_start);
    if (!options_.keep_segments) return;
    auto& segs = result_.trace.segments[i];
    if (!segs.empty() && segs.back().good == agent.good && segs.back().rate == agent.rate &&
        segs.back().end == agent.segment_start) {
      segs.back().end = t;
    } else {
      segs.push_back({agent.segment_start, t, agent.good, agent.rate});
    }
  }

  std::size_t exhaust_at(const Rational& t) {
    now_ = t;
    ExhaustionEvent event{t, {}};
    while (!queue_.empty()) {
      drop_stale();
      if (queue_.empty() || queue_.top().time != t) break;
      std::size_t g = queue_.top().good;
      queue_.pop();
      auto& good = goods_[g];
      good.remaining = Rational();
      good.updated_at = t;
      good.exhausted = true;
      ++good.version;
      result_.trace.termination_times[g] = t;
      event.goods.push_back(g);
    }
    std::sort(event.goods.begin(), event.goods.end());
    std::vector<std::size_t> affected;
    for (std::size_t g : event.goods) {
      auto& consumers = goods_[g].consumers;
      affected.insert(affected.end(), consumers.begin(), consumers.end());
      consumers.clear();
      consumers.shrink_to_fit();
      goods_[g].rate = Rational();
    }
    std::sort(affected.begin(), affected.end());
    for (std::size_t i : affected) {
      close_segment(i, t);
      select(i, t);
    }
    std::size_t count = event.goods.size();
    result_.trace.events.push_back(std::move(event));
    return count;
  }

  void change_rate(std::size_t i, const Rational& t) {
    now_ = t;
    auto& agent = agents_[i];
    close_segment(i, t);
    Rational next = speeds_.agents[i][++agent.speed_index].rate;
    if (agent.good != kNone) {
      advance(agent.good, t);
      goods_[agent.good].rate += next - agent.rate;
      reproject(agent.good);
    }
    agent.rate = std::move(next);
    agent.segment_start = t;
  }

  const Instance& inst_;
  const BidProfile& bids_;
  const SpeedProfile& speeds_;
  RunOptions options_;
  std::vector<GoodState> goods_;
  std::vector<AgentState> agents_;
  std::vector<Breakpoint> breakpoints_;
  std::priority_queue<Projection, std::vector<Projection>, LaterFirst> queue_;
  Rational now_;
  RunResult result_;
};

}  // namespace

RunResult run_extended_sg(const Instance& inst, const BidProfile& bids, const SpeedProfile& speeds,
                          const RunOptions& options) {
  if (auto issue = validate_instance(inst)) throw Error(ErrorCode::InvalidInstance, issue->message, issue->index);
  require_valid_bids(inst, bids);
  require_valid_speeds(inst, speeds);
  return Simulation(inst, bids, speeds, options).run();
}

RunResult run_sg(const Instance& inst, const BidProfile& bids, const RunOptions& options) {
  return run_extended_sg(inst, bids, SpeedProfile::constant(inst), options);
}

std::vector<ExhaustionEvent> event_schedule(const Trace& trace) { return trace.events; }

}  // namespace sgm
