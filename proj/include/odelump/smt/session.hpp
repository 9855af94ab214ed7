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

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "odelump/rational.hpp"
#include "odelump/smt/encode.hpp"
#include "odelump/smt/process.hpp"

namespace odelump::smt {

struct SolverConfig {
  std::string executable = "z3";
  /// Empty means "pick from the executable name" (see default_arguments).
  std::vector<std::string> arguments;
  std::chrono::milliseconds time_limit{60'000};
  /// When set, every query is also written there as a standalone .smt2 file.
  std::optional<std::filesystem::path> dump_dir;
};

/// Command-line flags that put a known solver into stdin/stdout mode.
std::vector<std::string> default_arguments(const std::string& executable);

/// Looks for z3 or cvc5 on PATH.
std::optional<std::string> find_solver();

/// A value in a solver model. Irrational algebraic numbers (root-obj) are
/// not representable and are flagged instead.
struct ModelValue {
  std::optional<Rational> exact;
  std::string text;
};

enum class SatStatus { sat, unsat, unknown, timeout };

std::string_view to_string(SatStatus s);

struct QueryResult {
  SatStatus status = SatStatus::unknown;
  /// Keyed by symbol name without bars; only filled for sat.
  std::map<std::string, ModelValue> model;
  std::string reason;
};

/// Parses a `get-model` response.
std::map<std::string, ModelValue> parse_model(const SExpr& response);

/// Evaluates a closed real-valued term: numerals, decimals, `-`, `/`, `+`,
/// `*`. Returns nullopt for anything else (for example root-obj).
std::optional<Rational> evaluate_real(const SExpr& term);

/// One solver process for a whole reduction run. Each query starts with
/// (reset); a query that overruns the time limit kills the process, is
/// answered `timeout`, and the next query starts a fresh one.
class SolverSession {
 public:
  explicit SolverSession(SolverConfig config);

  QueryResult check(const Formula& formula, const std::vector<std::string>& extra_assertions = {});

  std::size_t query_count() const { return queries_; }
  const SolverConfig& config() const { return config_; }

 private:
  void ensure_started(SolverProcess::Clock::time_point deadline);
  void send(const std::vector<std::string>& commands, SolverProcess::Clock::time_point deadline);
  void dump(const Formula& formula, const std::vector<std::string>& extra);

  SolverConfig config_;
  SolverProcess process_;
  std::size_t queries_ = 0;
};

}  // namespace odelump::smt
