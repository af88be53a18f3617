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

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "sgalloc/efficiency.hpp"
#include "sgalloc/engine.hpp"
#include "sgalloc/equity.hpp"
#include "sgalloc/model.hpp"
#include "sgalloc/probes.hpp"

// JSON file formats. Every rational travels as a "p" or "p/q" string.
namespace sgm::io {

using json = nlohmann::ordered_json;

/// Parses an instance document and validates it. JSON syntax errors carry
/// line and column; structural errors carry the JSON pointer of the bad
/// value. Validation failures use the validate_instance codes.
Instance parse_instance(std::string_view text);
json instance_to_json(const Instance& inst);
std::string emit_instance(const Instance& inst);

/// {"bids": [{"agent": ID, "preference": [GOOD, ...]}, ...]}; unlisted
/// agents bid truthfully.
BidProfile parse_bids(const Instance& inst, std::string_view text);

/// {"speeds": [{"agent": ID, "segments": [{"end": R, "rate": R}, ...]}]};
/// unlisted agents eat at their requirement throughout.
SpeedProfile parse_speeds(const Instance& inst, std::string_view text);
json speeds_to_json(const Instance& inst, const SpeedProfile& speeds);

/// {"allocation": [[R, ...], ...]} with rows in agent order. Any document
/// with such a member (e.g. a run report) is accepted.
Allocation parse_allocation(const Instance& inst, std::string_view text);
json allocation_to_json(const Allocation& alloc);

json run_report(const Instance& inst, const RunResult& result, bool include_trace);
json pareto_report(const Instance& inst, const ParetoVerdict& verdict);
json envy_report(const Instance& inst, const EnvyReport& report);
json finding_report(const Instance& inst, const std::optional<ManipulationFinding>& finding);
json hypothesis_to_json(const HypothesisReport& report, std::size_t coalition_size);
json equitable_report(const Instance& inst, std::size_t k, const EquitableResult& result);
json lexi_report(const Instance& inst, const LexiEquitableResult& result, const ParetoVerdict& verdict);

/// Index of the agent/good with the given id; throws InvalidArgument.
std::size_t agent_index(const Instance& inst, std::string_view id);
std::size_t good_index(const Instance& inst, std::string_view id);

std::string dump(const json& doc);

}  // namespace sgm::io
