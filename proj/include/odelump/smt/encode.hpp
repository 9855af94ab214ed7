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

#include <string>
#include <vector>

#include "odelump/model.hpp"
#include "odelump/partition.hpp"
#include "odelump/quotient.hpp"

namespace odelump::smt {

/// A satisfiability query asserting the negation of an equivalence condition.
struct Formula {
  Equivalence mode = Equivalence::backward;
  std::string logic = "QF_NRA";
  /// Solver symbols for x (and x' in forward mode) and the free parameters.
  std::vector<std::string> variables;
  std::vector<std::string> primed;
  std::vector<std::string> parameters;
  /// Body of the single `assert` command: not (antecedent => consequent).
  std::string assertion;

  std::vector<std::string> declarations() const;
  /// Self-contained script: set-logic, declarations, assert, check-sat,
  /// get-model, exit.
  std::string script() const;
};

/// Quoted solver symbol for a model name.
std::string quote_symbol(const std::string& name);

/// SMT-LIB term for `poly` over the given variable and parameter symbols.
std::string to_smtlib(const Polynomial& poly, const std::vector<std::string>& variables,
                      const std::vector<std::string>& parameters);

/// phi := (and of x_rep = x_i within blocks) => (and of f_rep = f_i).
/// Bound parameters must already be substituted (see `instantiate`); the
/// system's remaining parameters are declared as free constants.
Formula encode_bde(const PolynomialODESystem& system, const Partition& part);

/// phi := (and over blocks of sum x = sum x') => (and over blocks of
/// sum f(x) = sum f(x')).
Formula encode_fde(const PolynomialODESystem& system, const Partition& part);

Formula encode(const PolynomialODESystem& system, const Partition& part, Equivalence mode);

}  // namespace odelump::smt
