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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "odelump/model.hpp"
#include "odelump/partition.hpp"
#include "odelump/quotient.hpp"
#include "odelump/smt/session.hpp"

namespace odelump::smt {

/// The solver's model contradicts what it claimed (for example a BDE witness
/// that separates nothing). Reported as an inconclusive run.
class SolverModelError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// A refuting assignment, re-evaluated in exact arithmetic.
struct Witness {
  Equivalence mode = Equivalence::backward;
  std::vector<Rational> assignment;
  /// Second copy x' (forward mode only).
  std::vector<Rational> primed;
  /// Values of the parameters left free in the query.
  std::vector<std::pair<std::string, Rational>> parameters;
  std::vector<Rational> derivatives;
  std::vector<Rational> primed_derivatives;
  /// Some solver values were irrational and were pinned to rationals by
  /// follow-up queries.
  bool pinned = false;
};

enum class Verdict { valid, counterexample, unknown };

std::string_view to_string(Verdict v);

struct CheckOutcome {
  Verdict verdict = Verdict::unknown;
  std::optional<Witness> witness;
  std::string reason;
  std::size_t solver_calls = 0;
};

/// Decides whether `part` is a BDE/FDE of `system`. Bound parameters are
/// substituted first; unbound ones stay free, so `valid` means valid for
/// every value of them.
CheckOutcome check_partition(SolverSession& session, const PolynomialODESystem& system, const Partition& part,
                             Equivalence mode);

/// As check_partition, additionally un-binding the listed parameters.
CheckOutcome check_uncertain(SolverSession& session, const PolynomialODESystem& system, const Partition& part,
                             Equivalence mode, std::span<const std::string> free_parameters);

/// Splits every block by the exact derivative values at the witness. Throws
/// SolverModelError if nothing is split.
Partition split_by_witness(const Partition& part, const Witness& witness);

struct SmtReduction {
  Partition partition;
  bool conclusive = true;
  std::string reason;
  std::size_t iterations = 0;
  std::size_t solver_calls = 0;
  std::vector<Witness> witnesses;
};

/// Counterexample-guided refinement: check, split by the witness, repeat.
SmtReduction largest_bde_smt(SolverSession& session, const PolynomialODESystem& system, const Partition& initial);

}  // namespace odelump::smt
