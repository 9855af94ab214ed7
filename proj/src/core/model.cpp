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

#include "odelump/model.hpp"

#include <algorithm>
#include <unordered_set>

#include "odelump/errors.hpp"

namespace odelump {

namespace {

void check_unique_names(const std::vector<std::string>& a, const std::vector<Parameter>& params,
                        const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& name : a) {
    if (name.empty()) throw ModelError(std::string("empty ") + what + " name");
    if (!seen.insert(name).second) throw ModelError("duplicate identifier '" + name + "'");
  }
  for (const auto& p : params) {
    if (!seen.insert(p.name).second) throw ModelError("duplicate identifier '" + p.name + "'");
  }
}

}  // namespace

std::uint32_t PolynomialODESystem::degree() const {
  std::uint32_t d = 0;
  for (const auto& f : derivatives) d = std::max(d, f.degree());
  return d;
}

std::size_t PolynomialODESystem::monomial_count() const {
  std::size_t m = 0;
  for (const auto& f : derivatives) m += f.size();
  return m;
}

bool PolynomialODESystem::has_complete_initial() const {
  return initial.size() == variables.size() &&
         std::all_of(initial.begin(), initial.end(), [](const auto& v) { return v.has_value(); });
}

std::optional<std::size_t> PolynomialODESystem::variable_index(const std::string& name) const {
  auto it = std::find(variables.begin(), variables.end(), name);
  if (it == variables.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables.begin());
}

std::optional<std::size_t> PolynomialODESystem::parameter_index(const std::string& name) const {
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    if (parameters[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> PolynomialODESystem::free_parameters() const {
  std::vector<std::string> names;
  for (const auto& p : parameters) {
    if (!p.value) names.push_back(p.name);
  }
  return names;
}

void PolynomialODESystem::validate() const {
  check_unique_names(variables, parameters, "variable");
  if (derivatives.size() != variables.size()) {
    throw ModelError("system has " + std::to_string(variables.size()) + " variables but " +
                     std::to_string(derivatives.size()) + " derivatives");
  }
  if (!initial.empty() && initial.size() != variables.size()) {
    throw ModelError("initial condition vector has the wrong length");
  }
  for (const auto& f : derivatives) {
    for (const auto& [m, c] : f.terms()) {
      for (const auto& [index, exp] : m.factors()) {
        if (index >= variables.size()) throw ModelError("derivative references unknown variable");
      }
      for (const auto& [pm, pc] : c.terms()) {
        for (const auto& [index, exp] : pm.factors()) {
          if (index >= parameters.size()) throw ModelError("derivative references unknown parameter");
        }
      }
    }
  }
}

SpeciesMultiset make_multiset(std::vector<std::pair<std::size_t, std::uint32_t>> entries) {
  std::sort(entries.begin(), entries.end());
  SpeciesMultiset out;
  for (const auto& [s, k] : entries) {
    if (k == 0) continue;
    if (!out.empty() && out.back().first == s) {
      out.back().second += k;
    } else {
      out.emplace_back(s, k);
    }
  }
  return out;
}

std::uint32_t multiset_size(const SpeciesMultiset& ms) {
  std::uint32_t n = 0;
  for (const auto& [s, k] : ms) n += k;
  return n;
}

std::uint32_t multiplicity(const SpeciesMultiset& ms, std::size_t species) {
  for (const auto& [s, k] : ms) {
    if (s == species) return k;
  }
  return 0;
}

std::optional<std::size_t> ReactionNetwork::species_index(const std::string& name) const {
  auto it = std::find(species.begin(), species.end(), name);
  if (it == species.end()) return std::nullopt;
  return static_cast<std::size_t>(it - species.begin());
}

void ReactionNetwork::validate() const {
  check_unique_names(species, parameters, "species");
  if (!initial.empty() && initial.size() != species.size()) {
    throw ModelError("initial condition vector has the wrong length");
  }
  for (const auto& r : reactions) {
    if (r.reagents.empty() && r.products.empty()) {
      throw ModelError("reaction with empty reagents and products");
    }
    for (const auto* side : {&r.reagents, &r.products}) {
      for (const auto& [s, k] : *side) {
        if (s >= species.size()) throw ModelError("reaction references undeclared species");
        if (k == 0) throw ModelError("zero stoichiometry");
      }
    }
    if (r.rate.is_rational()) {
      if (r.rate.rational_value() <= 0) throw ModelError("reaction rate must be positive");
    } else {
      const auto& terms = r.rate.terms();
      if (terms.size() != 1 || terms.begin()->first.degree() != 1 || terms.begin()->second != 1) {
        throw ModelError("reaction rate must be a number or a single parameter");
      }
      auto index = terms.begin()->first.factors()[0].first;
      if (index >= parameters.size()) throw ModelError("rate references unknown parameter");
      const auto& value = parameters[index].value;
      if (value && *value <= 0) {
        throw ModelError("rate parameter '" + parameters[index].name + "' must be positive");
      }
    }
  }
}

PolynomialODESystem mass_action_odes(const ReactionNetwork& net, bool allow_free_rates) {
  net.validate();
  PolynomialODESystem system;
  system.name = net.name;
  system.variables = net.species;
  system.parameters = net.parameters;
  system.initial = net.initial;
  system.derivatives.assign(net.species.size(), Polynomial{});
  for (const auto& r : net.reactions) {
    if (!r.rate.is_rational() && !allow_free_rates) {
      auto index = r.rate.terms().begin()->first.factors()[0].first;
      if (!net.parameters[index].value) {
        throw ModelError("rate parameter '" + net.parameters[index].name +
                         "' is unbound (only allowed in uncertain-parameter mode)");
      }
    }
    std::vector<Monomial::Factor> factors;
    for (const auto& [s, k] : r.reagents) factors.emplace_back(static_cast<std::uint32_t>(s), k);
    Monomial mono(std::move(factors));
    // Net change per species; the union of both sides covers every nonzero entry.
    std::vector<std::size_t> touched;
    for (const auto& [s, k] : r.reagents) touched.push_back(s);
    for (const auto& [s, k] : r.products) touched.push_back(s);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::size_t s : touched) {
      long net_change = static_cast<long>(multiplicity(r.products, s)) -
                        static_cast<long>(multiplicity(r.reagents, s));
      if (net_change == 0) continue;
      Coefficient c = r.rate;
      c *= Rational(net_change);
      system.derivatives[s].add_term(mono, c);
    }
  }
  return system;
}

PolynomialODESystem instantiate(const PolynomialODESystem& system,
                                std::span<const std::string> keep_free) {
  system.validate();
  for (const auto& name : keep_free) {
    if (!system.parameter_index(name)) {
      throw ModelError("unknown parameter '" + name + "' listed as uncertain");
    }
  }
  std::vector<std::optional<Rational>> values(system.parameters.size());
  std::vector<std::uint32_t> new_index(system.parameters.size(), 0);
  PolynomialODESystem out;
  out.name = system.name;
  out.variables = system.variables;
  out.initial = system.initial;
  for (std::size_t i = 0; i < system.parameters.size(); ++i) {
    const auto& p = system.parameters[i];
    bool free = std::find(keep_free.begin(), keep_free.end(), p.name) != keep_free.end();
    if (free) {
      new_index[i] = static_cast<std::uint32_t>(out.parameters.size());
      out.parameters.push_back(Parameter{p.name, std::nullopt});
    } else if (p.value) {
      values[i] = p.value;
    } else {
      throw ModelError("parameter '" + p.name +
                       "' is unbound; bind it or list it as uncertain");
    }
  }
  out.derivatives.reserve(system.derivatives.size());
  for (const auto& f : system.derivatives) {
    out.derivatives.push_back(
        f.with_parameters(values).with_parameters_renamed([&](std::uint32_t i) { return new_index[i]; }));
  }
  return out;
}

}  // namespace odelump
