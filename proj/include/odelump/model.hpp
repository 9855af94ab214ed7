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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "odelump/polynomial.hpp"
#include "odelump/rational.hpp"

namespace odelump {

/// A named constant. Unbound parameters are free symbols and are only legal
/// where the caller explicitly asks for uncertain-parameter analysis.
struct Parameter {
  std::string name;
  std::optional<Rational> value;

  friend bool operator==(const Parameter&, const Parameter&) = default;
};

/// x' = f(x) with one polynomial derivative per variable. Coefficients may
/// reference parameters symbolically; see instantiate().
struct PolynomialODESystem {
  std::string name;
  std::vector<std::string> variables;
  std::vector<Parameter> parameters;
  std::vector<Polynomial> derivatives;
  /// Either empty or one optional entry per variable.
  std::vector<std::optional<Rational>> initial;

  std::size_t size() const { return variables.size(); }
  std::uint32_t degree() const;
  /// Total number of (variable, monomial) terms across all derivatives.
  std::size_t monomial_count() const;
  bool has_complete_initial() const;
  std::optional<std::size_t> variable_index(const std::string& name) const;
  std::optional<std::size_t> parameter_index(const std::string& name) const;
  std::vector<std::string> free_parameters() const;

  /// Throws ModelError when an invariant does not hold.
  void validate() const;

  friend bool operator==(const PolynomialODESystem&, const PolynomialODESystem&) = default;
};

/// Multiset of species: (species index, multiplicity), sorted, no zero entries.
using SpeciesMultiset = std::vector<std::pair<std::size_t, std::uint32_t>>;

SpeciesMultiset make_multiset(std::vector<std::pair<std::size_t, std::uint32_t>> entries);
std::uint32_t multiset_size(const SpeciesMultiset& ms);
std::uint32_t multiplicity(const SpeciesMultiset& ms, std::size_t species);

struct Reaction {
  SpeciesMultiset reagents;
  SpeciesMultiset products;
  /// A positive rational or a single parameter.
  Coefficient rate;

  friend bool operator==(const Reaction&, const Reaction&) = default;
};

struct ReactionNetwork {
  std::string name;
  std::vector<std::string> species;
  std::vector<Parameter> parameters;
  std::vector<Reaction> reactions;
  std::vector<std::optional<Rational>> initial;

  std::optional<std::size_t> species_index(const std::string& name) const;
  void validate() const;

  friend bool operator==(const ReactionNetwork&, const ReactionNetwork&) = default;
};

/// Mass-action semantics: each reaction rho -> pi at rate a contributes
/// a * (pi(s) - rho(s)) * prod_r x_r^rho(r) to species s. Rates that are unbound
/// parameters are rejected unless `allow_free_rates` is set.
PolynomialODESystem mass_action_odes(const ReactionNetwork& net, bool allow_free_rates = false);

/// Substitutes every bound parameter except those named in `keep_free`, which
/// become unbound symbols. The result's parameter list holds only the free
/// ones. Throws ModelError if some parameter is unbound and not listed.
PolynomialODESystem instantiate(const PolynomialODESystem& system,
                                std::span<const std::string> keep_free = {});

}  // namespace odelump
