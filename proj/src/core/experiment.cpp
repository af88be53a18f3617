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

#include "sgalloc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "sgalloc/engine.hpp"
#include "sgalloc/equity.hpp"

namespace sgm {

Instance generate_instance(const GeneratorOptions& options) {
  if (options.agents == 0 || options.goods == 0)
    throw Error(ErrorCode::InvalidArgument, "need at least one agent and one good");
  if (options.unit && options.agents != options.goods)
    throw Error(ErrorCode::InvalidArgument, "unit instances need as many agents as goods");
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<long> numerator(1, 9);
  std::uniform_int_distribution<long> denominator(1, 4);
  auto draw = [&] {
    long p = numerator(rng);
    long q = denominator(rng);
    return Rational(p, q);
  };

  Instance inst;
  for (std::size_t j = 0; j < options.goods; ++j)
    inst.goods.push_back({"g" + std::to_string(j + 1), options.unit ? Rational(1) : draw()});
  Rational requirements;
  for (std::size_t i = 0; i < options.agents; ++i) {
    Permutation pref(options.goods);
    std::iota(pref.begin(), pref.end(), std::size_t{0});
    std::shuffle(pref.begin(), pref.end(), rng);
    inst.agents.push_back({"a" + std::to_string(i + 1), options.unit ? Rational(1) : draw(), std::move(pref)});
    requirements += inst.agents.back().requirement;
  }
  if (!options.unit) {
    Rational scale = inst.total_quantity() / requirements;
    for (auto& a : inst.agents) a.requirement *= scale;
  }
  return inst;
}

std::uint64_t sample_seed(std::uint64_t master, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(std::uint64_t{index} >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (std::uint64_t{words[0]} << 32) | words[1];
}

std::string stats_csv(const StatsOptions& options) {
  std::vector<std::size_t> ks = options.ks;
  if (ks.empty()) {
    ks.resize(options.goods);
    std::iota(ks.begin(), ks.end(), std::size_t{1});
  }
  for (std::size_t k : ks)
    if (k < 1 || k > options.goods) throw Error(ErrorCode::InvalidArgument, "k must lie in [1, goods]");
  // Fail fast on bad dimensions before fanning out.
  generate_instance({options.agents, options.goods, options.seed, options.unit});

  std::vector<std::string> rows(options.samples);
  auto run_sample = [&](std::size_t s) {
    Instance inst = generate_instance({options.agents, options.goods, sample_seed(options.seed, s), options.unit});
    auto run = run_sg(inst, BidProfile::truthful(inst), RunOptions{.keep_segments = false});
    BetaVector beta = beta_vector(inst, run.allocation);
    std::ostringstream out;
    for (std::size_t k : ks) {
      Rational t_star = equitable_top_k(inst, k).t_star;
      out << options.agents << ',' << options.goods << ',' << k << ',' << s << ',' << beta[k - 1] << ',' << t_star
          << '\n';
    }
    rows[s] = out.str();
  };

  unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto work = [&] {
    try {
      for (std::size_t s; (s = next.fetch_add(1)) < options.samples;) run_sample(s);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = options.samples;
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);

  std::string csv = "n,m,k,sample,beta_k,t_star\n";
  for (const auto& r : rows) csv += r;
  return csv;
}

}  // namespace sgm
