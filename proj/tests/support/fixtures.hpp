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

// Instances used across the unit and acceptance suites, plus seeded random
// generators for property tests.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "sgalloc/engine.hpp"
#include "sgalloc/model.hpp"

namespace sgm::testing {

inline Rational R(long p, long q = 1) { return Rational(p, q); }

inline Instance make_instance(const std::vector<Rational>& quantities, const std::vector<Rational>& requirements,
                              const std::vector<Permutation>& prefs) {
  Instance inst;
  for (std::size_t j = 0; j < quantities.size(); ++j) inst.goods.push_back({"g" + std::to_string(j + 1), quantities[j]});
  for (std::size_t i = 0; i < requirements.size(); ++i)
    inst.agents.push_back({"a" + std::to_string(i + 1), requirements[i], prefs[i]});
  return inst;
}

/// Two agents with requirement 3/2, unit goods A, B, C; prefs (A,B,C) and (B,C,A).
inline Instance three_good_manipulation() {
  Instance inst = make_instance({R(1), R(1), R(1)}, {R(3, 2), R(3, 2)}, {{0, 1, 2}, {1, 2, 0}});
  inst.goods[0].id = "A";
  inst.goods[1].id = "B";
  inst.goods[2].id = "C";
  inst.agents[0].id = "1";
  inst.agents[1].id = "2";
  return inst;
}

/// q = (1/2, 5/6, 2/3), r = (1, 1), prefs (1,2,3) and (2,3,1).
inline Instance equity_example() {
  return make_instance({R(1, 2), R(5, 6), R(2, 3)}, {R(1), R(1)}, {{0, 1, 2}, {1, 2, 0}});
}

/// Four unit agents and goods; agents 1-2 prefer (1,2,3,4), agents 3-4 (2,4,3,1).
inline Instance variable_speed_example() {
  return make_instance({R(1), R(1), R(1), R(1)}, {R(1), R(1), R(1), R(1)},
                       {{0, 1, 2, 3}, {0, 1, 2, 3}, {1, 3, 2, 0}, {1, 3, 2, 0}});
}

/// Agent 1 at constant speed 1; agents 2-4 at 1 on [0,1/2], 0 on (1/2,5/6], 3 on (5/6,1].
inline SpeedProfile variable_speed_profile() {
  SpeedProfile speeds;
  speeds.agents.push_back({SpeedSegment{R(1), R(1)}});
  for (int i = 0; i < 3; ++i)
    speeds.agents.push_back({SpeedSegment{R(1, 2), R(1)}, SpeedSegment{R(5, 6), R(0)}, SpeedSegment{R(1), R(3)}});
  return speeds;
}

/// The coalition counterexample scaled to four agents: r_i = 3/4, unit
/// goods, agents 1-2 prefer (A,B,C) and agents 3-4 prefer (B,C,A).
inline Instance coalition_counterexample() {
  Instance inst = make_instance({R(1), R(1), R(1)}, {R(3, 4), R(3, 4), R(3, 4), R(3, 4)},
                                {{0, 1, 2}, {0, 1, 2}, {1, 2, 0}, {1, 2, 0}});
  inst.goods[0].id = "A";
  inst.goods[1].id = "B";
  inst.goods[2].id = "C";
  return inst;
}

inline Permutation random_permutation(std::size_t m, std::mt19937_64& rng) {
  Permutation p(m);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Rational random_positive(std::mt19937_64& rng, long max_num = 9, long max_den = 6) {
  std::uniform_int_distribution<long> num(1, max_num), den(1, max_den);
  long p = num(rng);
  long q = den(rng);
  return Rational(p, q);
}

/// Random valid instance with rational quantities; requirements rescaled so
/// the totals agree. With equal_requirements every r_i = sum(q)/n.
inline Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m, bool equal_requirements = false) {
  std::vector<Rational> q, r;
  for (std::size_t j = 0; j < m; ++j) q.push_back(random_positive(rng));
  Rational total_q, total_r;
  for (const auto& x : q) total_q += x;
  for (std::size_t i = 0; i < n; ++i) {
    r.push_back(equal_requirements ? R(1) : random_positive(rng));
    total_r += r.back();
  }
  for (auto& x : r) x *= total_q / total_r;
  std::vector<Permutation> prefs;
  for (std::size_t i = 0; i < n; ++i) prefs.push_back(random_permutation(m, rng));
  return make_instance(q, r, prefs);
}

inline Instance random_unit_instance(std::mt19937_64& rng, std::size_t n) {
  std::vector<Rational> ones(n, R(1));
  std::vector<Permutation> prefs;
  for (std::size_t i = 0; i < n; ++i) prefs.push_back(random_permutation(n, rng));
  return make_instance(ones, ones, prefs);
}

/// Random speed profile for the instance: a few breakpoints per agent with
/// random nonnegative rates, rescaled so each integral is r_i.
inline SpeedProfile random_speeds(std::mt19937_64& rng, const Instance& inst) {
  SpeedProfile speeds;
  std::uniform_int_distribution<int> pieces(1, 4), rate(0, 4), cut(1, 11);
  for (const auto& agent : inst.agents) {
    std::vector<Rational> ends;
    int k = pieces(rng);
    for (int s = 0; s + 1 < k; ++s) ends.push_back(R(cut(rng), 12));
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    ends.push_back(R(1));
    std::vector<SpeedSegment> segs;
    Rational prev, integral;
    for (const auto& e : ends) {
      Rational v = R(rate(rng));
      segs.push_back({e, v});
      integral += (e - prev) * v;
      prev = e;
    }
    if (integral.is_zero()) {
      segs.back().rate = R(1);
      integral = segs.back().end - (segs.size() > 1 ? segs[segs.size() - 2].end : R(0));
    }
    Rational scale = agent.requirement / integral;
    for (auto& s : segs) s.rate *= scale;
    speeds.agents.push_back(std::move(segs));
  }
  return speeds;
}

inline std::vector<Rational> row(const Allocation& a, std::size_t i) {
  auto s = a.share(i);
  return {s.begin(), s.end()};
}

}  // namespace sgm::testing
