/*
 * Copyright 2026 The odelump Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "odelump/driver/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>

#include "odelump/errors.hpp"
#include "odelump/smt/reducer.hpp"
#include "odelump/syntactic/refine.hpp"

namespace odelump::driver {

namespace {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Largest number of reactions a single template may expand into.
constexpr std::size_t max_expansion = 64;

struct Template {
  std::size_t a;
  std::size_t b;
  std::vector<std::size_t> products;
  Rational rate;
};

class Builder {
 public:
  Builder(ReactionNetwork& net, const std::vector<std::vector<std::size_t>>& copies)
      : net_(net), copies_(copies), terms_(net.species.size()) {}

  std::size_t expansion(const Template& t) const {
    std::size_t k = copies_[t.a].size() * copies_[t.b].size();
    for (std::size_t p : t.products) k *= copies_[p].size();
    return k;
  }

  void add(const Template& t) {
    std::vector<std::size_t> choice(t.products.size(), 0);
    for (std::size_t ca : copies_[t.a]) {
      for (std::size_t cb : copies_[t.b]) {
        std::fill(choice.begin(), choice.end(), 0);
        while (true) {
          std::vector<std::pair<std::size_t, std::uint32_t>> products;
          for (std::size_t k = 0; k < t.products.size(); ++k) products.emplace_back(copies_[t.products[k]][choice[k]], 1);
          emit(ca, cb, products, t.rate);
          // Odometer over the product copies.
          std::size_t k = 0;
          while (k < choice.size() && ++choice[k] == copies_[t.products[k]].size()) choice[k++] = 0;
          if (k == choice.size()) break;
        }
      }
    }
  }

  void emit(std::size_t a, std::size_t b, const std::vector<std::pair<std::size_t, std::uint32_t>>& products,
            const Rational& rate) {
    Reaction r;
    r.reagents = make_multiset({{a, 1}, {b, 1}});
    r.products = make_multiset(products);
    r.rate = Coefficient(rate);
    std::uint64_t key = (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
    for (std::size_t s : touched(r)) {
      if (multiplicity(r.products, s) != multiplicity(r.reagents, s)) {
        if (terms_[s].insert(key).second) ++count_;
      }
    }
    net_.reactions.push_back(std::move(r));
  }

  std::size_t estimated_monomials() const { return count_; }
  void count_decay() { ++count_; }

 private:
  static std::vector<std::size_t> touched(const Reaction& r) {
    std::vector<std::size_t> out;
    for (const auto& [s, k] : r.reagents) out.push_back(s);
    for (const auto& [s, k] : r.products) out.push_back(s);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  ReactionNetwork& net_;
  const std::vector<std::vector<std::size_t>>& copies_;
  std::vector<std::unordered_set<std::uint64_t>> terms_;
  std::size_t count_ = 0;
};

}  // namespace

BenchModel generate_bench(const BenchSpec& spec) {
  if (spec.n == 0) throw ModelError("bench spec needs n > 0");
  std::size_t grouped = 0;
  for (std::size_t g : spec.groups) {
    if (g == 0) throw ModelError("bench spec has an empty group");
    grouped += g;
  }
  if (grouped > spec.n) {
    throw ModelError("infeasible bench spec: groups cover " + std::to_string(grouped) + " species but n = " +
                     std::to_string(spec.n));
  }
  if (spec.m < spec.n) {
    throw ModelError("infeasible bench spec: m = " + std::to_string(spec.m) +
                     " is below n; every species needs at least one monomial");
  }
  Rng rng(spec.seed);

  // Prototype sizes: the groups, then singletons.
  std::vector<std::size_t> sizes = spec.groups;
  sizes.resize(spec.groups.size() + (spec.n - grouped), 1);

  // Scatter the species so that groups are not contiguous.
  std::vector<std::size_t> position(spec.n);
  std::iota(position.begin(), position.end(), 0);
  std::shuffle(position.begin(), position.end(), rng);

  BenchModel out;
  ReactionNetwork& net = out.network;
  net.name = "bench_n" + std::to_string(spec.n) + "_m" + std::to_string(spec.m) + "_s" + std::to_string(spec.seed);
  net.species.resize(spec.n);
  net.initial.resize(spec.n);
  std::vector<std::vector<std::size_t>> copies(sizes.size());
  std::vector<std::size_t> labels(spec.n);
  std::size_t next = 0;
  for (std::size_t p = 0; p < sizes.size(); ++p) {
    for (std::size_t c = 0; c < sizes[p]; ++c) {
      std::size_t s = position[next++];
      copies[p].push_back(s);
      labels[s] = p;
      net.species[s] = sizes[p] == 1 ? "s" + std::to_string(p) : "g" + std::to_string(p) + "_" + std::to_string(c);
      Rational x0(static_cast<long>(p % 7 + 1), 4);
      x0.canonicalize();
      net.initial[s] = x0;
    }
    std::sort(copies[p].begin(), copies[p].end());
  }
  out.planted = Partition::from_labels(labels);

  Builder builder(net, copies);
  for (std::size_t p = 0; p < sizes.size(); ++p) {
    for (std::size_t s : copies[p]) {
      Reaction r;
      r.reagents = make_multiset({{s, 1}});
      r.rate = Coefficient(Rational(static_cast<long>(p + 1)));
      net.reactions.push_back(std::move(r));
      builder.count_decay();
    }
  }

  static const Rational rates[] = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(5, 2)};
  std::size_t prototypes = sizes.size();
  auto grow_until = [&](std::size_t target) {
    std::size_t attempts = 0;
    while (builder.estimated_monomials() < target) {
      if (++attempts > 100 * target + 1000) throw ModelError("bench generator cannot reach the requested m");
      Template t;
      t.a = uniform(rng, 0, prototypes - 1);
      t.b = uniform(rng, 0, prototypes - 1);
      for (std::size_t k = uniform(rng, 0, 2); k > 0; --k) t.products.push_back(uniform(rng, 0, prototypes - 1));
      t.rate = rates[uniform(rng, 0, 4)];
      if (builder.expansion(t) > max_expansion) continue;
      builder.add(t);
    }
  };
  grow_until(spec.m);
  // Terms from different reactions can cancel; top up until the exact count holds.
  while (mass_action_odes(net).monomial_count() < spec.m) {
    grow_until(builder.estimated_monomials() + (spec.m - mass_action_odes(net).monomial_count()));
  }
  return out;
}

BenchResult run_bench(const BenchSpec& spec, const std::vector<std::string>& backends,
                      const smt::SolverConfig& solver) {
  BenchModel model = generate_bench(spec);
  PolynomialODESystem system = mass_action_odes(model.network);
  BenchResult result;
  result.model = model.network.name;
  result.spec = spec;
  result.n = system.size();
  result.m = system.monomial_count();
  result.planted_blocks = model.planted.block_count();
  Partition trivial = Partition::trivial(system.size());
  for (const auto& backend : backends) {
    BenchRun run;
    run.backend = backend;
    auto start = std::chrono::steady_clock::now();
    Partition found;
    if (backend == "syntactic") {
      found = syntactic::refine_bde(system, trivial);
    } else if (backend == "smt") {
      smt::SolverSession session(solver);
      auto red = smt::largest_bde_smt(session, system, trivial);
      found = red.partition;
      run.conclusive = red.conclusive;
      run.solver_calls = red.solver_calls;
    } else {
      throw ModelError("unknown backend '" + backend + "'");
    }
    run.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    run.blocks = found.block_count();
    run.matches_planted = found == model.planted;
    result.runs.push_back(run);
  }
  return result;
}

}  // namespace odelump::driver
