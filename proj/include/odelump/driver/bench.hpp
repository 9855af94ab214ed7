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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "odelump/model.hpp"
#include "odelump/partition.hpp"
#include "odelump/smt/session.hpp"

namespace odelump::driver {

struct BenchSpec {
  std::size_t n = 0;
  /// Target number of monomials (terms summed over all derivatives).
  std::size_t m = 0;
  /// Sizes of the planted symmetry groups; the remaining species are singletons.
  std::vector<std::size_t> groups;
  std::uint64_t seed = 1;
};

struct BenchModel {
  ReactionNetwork network;
  /// The coarsest BDE of the network's mass-action system, by construction.
  Partition planted;
};

/// Seeded reaction network with m >= spec.m monomials whose coarsest BDE
/// (from the trivial partition) is exactly the planted groups.
///
/// Each prototype species (one per group plus one per singleton) decays at
/// its own rate, which is the only unimolecular reaction, so no two
/// prototypes can ever be merged. Every other reaction is bimolecular and is
/// instantiated for every combination of copies of the prototypes it
/// mentions, which makes the copies of a group interchangeable.
BenchModel generate_bench(const BenchSpec& spec);

/// One BDE reduction of a generated model, from the trivial partition.
struct BenchRun {
  std::string backend;
  double wall_time_ms = 0.0;
  std::size_t blocks = 0;
  bool matches_planted = false;
  bool conclusive = true;
  std::optional<std::size_t> solver_calls;
};

struct BenchResult {
  std::string model;
  BenchSpec spec;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t planted_blocks = 0;
  std::vector<BenchRun> runs;
};

/// Generates the model and times the largest-BDE computation on each
/// backend ("syntactic", "smt"). Model generation is not timed.
BenchResult run_bench(const BenchSpec& spec, const std::vector<std::string>& backends,
                      const smt::SolverConfig& solver = {});

}  // namespace odelump::driver
