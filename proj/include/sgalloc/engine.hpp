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
#include <vector>

#include "sgalloc/model.hpp"

namespace sgm {

/// Constant-rate piece of a speed function, covering (previous end, end].
struct SpeedSegment {
  Rational end;
  Rational rate;

  friend bool operator==(const SpeedSegment&, const SpeedSegment&) = default;
};

/// Piecewise-constant consumption rate per agent over [0, 1].
struct SpeedProfile {
  std::vector<std::vector<SpeedSegment>> agents;

  /// Every agent eats at its own requirement for the whole interval.
  static SpeedProfile constant(const Instance& inst);

  friend bool operator==(const SpeedProfile&, const SpeedProfile&) = default;
};

/// Throws InvalidSpeedSegments or SpeedIntegralMismatch.
void require_valid_speeds(const Instance& inst, const SpeedProfile& speeds);

struct ConsumptionSegment {
  Rational start;
  Rational end;
  std::size_t good;
  Rational rate;

  friend bool operator==(const ConsumptionSegment&, const ConsumptionSegment&) = default;
};

struct ExhaustionEvent {
  Rational time;
  std::vector<std::size_t> goods;  // ascending

  friend bool operator==(const ExhaustionEvent&, const ExhaustionEvent&) = default;
};

struct Trace {
  std::vector<Rational> termination_times;
  /// Per agent; empty when the run was made without trace retention.
  std::vector<std::vector<ConsumptionSegment>> segments;
  std::vector<ExhaustionEvent> events;
  /// Number of bid-list positions agents advanced past; bounded by n * m.
  std::uint64_t switch_count = 0;

  friend bool operator==(const Trace&, const Trace&) = default;
};

struct RunOptions {
  bool keep_segments = true;
};

struct RunResult {
  Allocation allocation;
  Trace trace;
};

RunResult run_sg(const Instance& inst, const BidProfile& bids, const RunOptions& options = {});

RunResult run_extended_sg(const Instance& inst, const BidProfile& bids, const SpeedProfile& speeds,
                          const RunOptions& options = {});

/// Exhaustion events of a completed run in increasing time order.
std::vector<ExhaustionEvent> event_schedule(const Trace& trace);

}  // namespace sgm
