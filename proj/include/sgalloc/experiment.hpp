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
#include <string>
#include <vector>

#include "sgalloc/model.hpp"

namespace sgm {

struct GeneratorOptions {
  std::size_t agents = 0;
  std::size_t goods = 0;
  std::uint64_t seed = 0;
  /// All quantities and requirements 1 (needs agents == goods).
  bool unit = false;
};

/// Random instance with uniformly random preference permutations. Without
/// `unit`, quantities and requirements are small random rationals and the
/// requirements are rescaled exactly so both totals agree.
Instance generate_instance(const GeneratorOptions& options);

struct StatsOptions {
  std::size_t samples = 0;
  std::size_t agents = 0;
  std::size_t goods = 0;
  std::uint64_t seed = 0;
  /// Prefix lengths to report; empty means 1..goods.
  std::vector<std::size_t> ks;
  bool unit = false;
  unsigned workers = 0;
};

/// Seed of sample `index` derived from the master seed.
std::uint64_t sample_seed(std::uint64_t master, std::size_t index);

/// CSV with header n,m,k,sample,beta_k,t_star: beta_k of the truthful
/// mechanism allocation and the top-k equitable optimum, one row per
/// (sample, k). Output is independent of `workers`.
std::string stats_csv(const StatsOptions& options);

}  // namespace sgm
