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

#include "sgalloc/io.hpp"

#include <unordered_map>

namespace sgm::io {

namespace {

[[noreturn]] void structure_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SyntaxError, "at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t b = 0; b < stop; ++b) {
      if (text[b] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::SyntaxError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": invalid JSON");
  }
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) structure_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) structure_error(where, std::string("missing member \"") + key + "\"");
  return *it;
}

const json& array_member(const json& obj, const char* key, const std::string& where) {
  const json& v = member(obj, key, where);
  if (!v.is_array()) structure_error(where + "/" + key, "expected an array");
  return v;
}

std::string string_value(const json& v, const std::string& where) {
  if (!v.is_string()) structure_error(where, "expected a string");
  return v.get<std::string>();
}

Rational rational_value(const json& v, const std::string& where) {
  auto text = string_value(v, where);
  auto r = Rational::parse(text);
  if (!r) structure_error(where, "malformed rational \"" + text + "\"");
  return *r;
}

json rational_array(std::span<const Rational> values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

json id_list(const Instance& inst, std::span<const std::size_t> goods) {
  json out = json::array();
  for (std::size_t g : goods) out.push_back(inst.goods[g].id);
  return out;
}

json agent_list(const Instance& inst, std::span<const std::size_t> agents) {
  json out = json::array();
  for (std::size_t a : agents) out.push_back(inst.agents[a].id);
  return out;
}

json sorted_rows(const Instance& inst, const Allocation& alloc) {
  json out = json::array();
  for (std::size_t i = 0; i < inst.num_agents(); ++i) out.push_back(rational_array(sorted_allocation(inst, alloc, i)));
  return out;
}

Permutation preference_value(const json& v, const std::string& where,
                             const std::unordered_map<std::string, std::size_t>& goods) {
  if (!v.is_array()) structure_error(where, "expected an array of good ids");
  Permutation perm;
  for (std::size_t k = 0; k < v.size(); ++k) {
    auto id = string_value(v[k], where + "/" + std::to_string(k));
    auto it = goods.find(id);
    if (it == goods.end()) structure_error(where + "/" + std::to_string(k), "unknown good \"" + id + "\"");
    perm.push_back(it->second);
  }
  return perm;
}

std::unordered_map<std::string, std::size_t> good_ids(const Instance& inst) {
  std::unordered_map<std::string, std::size_t> ids;
  for (std::size_t j = 0; j < inst.num_goods(); ++j) ids.emplace(inst.goods[j].id, j);
  return ids;
}

}  // namespace

std::size_t agent_index(const Instance& inst, std::string_view id) {
  for (std::size_t i = 0; i < inst.num_agents(); ++i)
    if (inst.agents[i].id == id) return i;
  throw Error(ErrorCode::InvalidArgument, "unknown agent \"" + std::string(id) + "\"");
}

std::size_t good_index(const Instance& inst, std::string_view id) {
  for (std::size_t j = 0; j < inst.num_goods(); ++j)
    if (inst.goods[j].id == id) return j;
  throw Error(ErrorCode::InvalidArgument, "unknown good \"" + std::string(id) + "\"");
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

Instance parse_instance(std::string_view text) {
  json doc = parse_document(text);
  Instance inst;
  const json& goods = array_member(doc, "goods", "");
  std::unordered_map<std::string, std::size_t> ids;
  for (std::size_t j = 0; j < goods.size(); ++j) {
    std::string where = "/goods/" + std::to_string(j);
    Good g{string_value(member(goods[j], "id", where), where + "/id"),
           rational_value(member(goods[j], "quantity", where), where + "/quantity")};
    if (!ids.emplace(g.id, j).second) structure_error(where + "/id", "duplicate good id \"" + g.id + "\"");
    inst.goods.push_back(std::move(g));
  }
  const json& agents = array_member(doc, "agents", "");
  std::unordered_map<std::string, std::size_t> agent_ids;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    std::string where = "/agents/" + std::to_string(i);
    Agent a{string_value(member(agents[i], "id", where), where + "/id"),
            rational_value(member(agents[i], "requirement", where), where + "/requirement"),
            preference_value(member(agents[i], "preference", where), where + "/preference", ids)};
    if (!agent_ids.emplace(a.id, i).second) structure_error(where + "/id", "duplicate agent id \"" + a.id + "\"");
    inst.agents.push_back(std::move(a));
  }
  require_valid(inst);
  return inst;
}

json instance_to_json(const Instance& inst) {
  json goods = json::array();
  for (const auto& g : inst.goods) goods.push_back({{"id", g.id}, {"quantity", g.quantity.str()}});
  json agents = json::array();
  for (const auto& a : inst.agents)
    agents.push_back({{"id", a.id}, {"requirement", a.requirement.str()}, {"preference", id_list(inst, a.preference)}});
  return {{"goods", goods}, {"agents", agents}};
}

std::string emit_instance(const Instance& inst) { return dump(instance_to_json(inst)); }

BidProfile parse_bids(const Instance& inst, std::string_view text) {
  json doc = parse_document(text);
  BidProfile bids = BidProfile::truthful(inst);
  auto ids = good_ids(inst);
  const json& list = array_member(doc, "bids", "");
  for (std::size_t k = 0; k < list.size(); ++k) {
    std::string where = "/bids/" + std::to_string(k);
    std::size_t i = agent_index(inst, string_value(member(list[k], "agent", where), where + "/agent"));
    bids.bids[i] = preference_value(member(list[k], "preference", where), where + "/preference", ids);
  }
  require_valid_bids(inst, bids);
  return bids;
}

SpeedProfile parse_speeds(const Instance& inst, std::string_view text) {
  json doc = parse_document(text);
  SpeedProfile speeds = SpeedProfile::constant(inst);
  const json& list = array_member(doc, "speeds", "");
  for (std::size_t k = 0; k < list.size(); ++k) {
    std::string where = "/speeds/" + std::to_string(k);
    std::size_t i = agent_index(inst, string_value(member(list[k], "agent", where), where + "/agent"));
    const json& segs = array_member(list[k], "segments", where);
    std::vector<SpeedSegment> parsed;
    for (std::size_t s = 0; s < segs.size(); ++s) {
      std::string sw = where + "/segments/" + std::to_string(s);
      parsed.push_back({rational_value(member(segs[s], "end", sw), sw + "/end"),
                        rational_value(member(segs[s], "rate", sw), sw + "/rate")});
    }
    speeds.agents[i] = std::move(parsed);
  }
  require_valid_speeds(inst, speeds);
  return speeds;
}

json speeds_to_json(const Instance& inst, const SpeedProfile& speeds) {
  json list = json::array();
  for (std::size_t i = 0; i < speeds.agents.size(); ++i) {
    json segs = json::array();
    for (const auto& s : speeds.agents[i]) segs.push_back({{"end", s.end.str()}, {"rate", s.rate.str()}});
    list.push_back({{"agent", inst.agents[i].id}, {"segments", segs}});
  }
  return {{"speeds", list}};
}

Allocation parse_allocation(const Instance& inst, std::string_view text) {
  json doc = parse_document(text);
  const json& rows = array_member(doc, "allocation", "");
  if (rows.size() != inst.num_agents())
    throw Error(ErrorCode::DimensionMismatch, "allocation has " + std::to_string(rows.size()) + " rows for " +
                                                  std::to_string(inst.num_agents()) + " agents");
  Allocation alloc(inst.num_agents(), inst.num_goods());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string where = "/allocation/" + std::to_string(i);
    if (!rows[i].is_array()) structure_error(where, "expected an array");
    if (rows[i].size() != inst.num_goods())
      throw Error(ErrorCode::DimensionMismatch, "allocation row " + std::to_string(i) + " has the wrong length", i);
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      alloc(i, j) = rational_value(rows[i][j], where + "/" + std::to_string(j));
  }
  return alloc;
}

json allocation_to_json(const Allocation& alloc) {
  json rows = json::array();
  for (std::size_t i = 0; i < alloc.num_agents(); ++i) rows.push_back(rational_array(alloc.share(i)));
  return rows;
}

json run_report(const Instance& inst, const RunResult& result, bool include_trace) {
  json report;
  std::vector<std::string> agent_ids, good_ids_list;
  for (const auto& a : inst.agents) agent_ids.push_back(a.id);
  for (const auto& g : inst.goods) good_ids_list.push_back(g.id);
  report["agents"] = agent_ids;
  report["goods"] = good_ids_list;
  report["allocation"] = allocation_to_json(result.allocation);
  report["sorted_allocation"] = sorted_rows(inst, result.allocation);
  report["termination_times"] = rational_array(result.trace.termination_times);
  json events = json::array();
  for (const auto& e : event_schedule(result.trace))
    events.push_back({{"time", e.time.str()}, {"goods", id_list(inst, e.goods)}});
  report["events"] = events;
  report["beta"] = rational_array(beta_vector(inst, result.allocation));
  report["switch_count"] = result.trace.switch_count;
  if (include_trace) {
    json trace = json::array();
    for (std::size_t i = 0; i < result.trace.segments.size(); ++i) {
      json segs = json::array();
      for (const auto& s : result.trace.segments[i])
        segs.push_back({{"start", s.start.str()}, {"end", s.end.str()}, {"good", inst.goods[s.good].id},
                        {"rate", s.rate.str()}});
      trace.push_back({{"agent", inst.agents[i].id}, {"segments", segs}});
    }
    report["trace"] = trace;
  }
  return report;
}

json pareto_report(const Instance& inst, const ParetoVerdict& verdict) {
  if (const auto* eff = std::get_if<Efficient>(&verdict))
    return {{"verdict", "Efficient"}, {"certificate", speeds_to_json(inst, eff->certificate)}};
  const auto& ineff = std::get<Inefficient>(verdict);
  return {{"verdict", "Inefficient"},
          {"blocking", agent_list(inst, ineff.blocking)},
          {"witness", {{"allocation", allocation_to_json(ineff.witness)}}}};
}

json envy_report(const Instance& inst, const EnvyReport& report) {
  json list = json::array();
  for (const auto& v : report.violations)
    list.push_back({{"agent", inst.agents[v.agent].id}, {"envies", inst.agents[v.other].id}, {"prefix", v.prefix}});
  return {{"envy_free", report.envy_free()}, {"violations", list}};
}

json finding_report(const Instance& inst, const std::optional<ManipulationFinding>& finding) {
  if (!finding) return {{"finding", nullptr}};
  const auto& f = *finding;
  json bids = json::array();
  for (std::size_t k = 0; k < f.coalition.size(); ++k)
    bids.push_back({{"agent", inst.agents[f.coalition[k]].id}, {"preference", id_list(inst, f.joint_bids[k])}});
  json shares = json::array();
  for (std::size_t i : f.coalition)
    shares.push_back({{"agent", inst.agents[i].id},
                      {"truthful_sorted", rational_array(sorted_allocation(inst, f.truthful_alloc, i))},
                      {"manipulated_sorted", rational_array(sorted_allocation(inst, f.manipulated_alloc, i))}});
  return {{"finding",
           {{"coalition", agent_list(inst, f.coalition)},
            {"bids", bids},
            {"strictly_improved", agent_list(inst, f.strictly_improved)},
            {"shares", shares},
            {"truthful_allocation", allocation_to_json(f.truthful_alloc)},
            {"manipulated_allocation", allocation_to_json(f.manipulated_alloc)}}}};
}

json hypothesis_to_json(const HypothesisReport& report, std::size_t coalition_size) {
  return {{"sp_condition", report.sp_holds_condition},
          {"coalition_size", coalition_size},
          {"gsp_condition", report.gsp_condition}};
}

json equitable_report(const Instance& inst, std::size_t k, const EquitableResult& result) {
  return {{"k", k},
          {"t_star", result.t_star.str()},
          {"allocation", allocation_to_json(result.allocation)},
          {"sorted_allocation", sorted_rows(inst, result.allocation)}};
}

json lexi_report(const Instance& inst, const LexiEquitableResult& result, const ParetoVerdict& verdict) {
  return {{"beta", rational_array(result.beta)},
          {"allocation", allocation_to_json(result.allocation)},
          {"sorted_allocation", sorted_rows(inst, result.allocation)},
          {"pareto", pareto_report(inst, verdict)}};
}

}  // namespace sgm::io
