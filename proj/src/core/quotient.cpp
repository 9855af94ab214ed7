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

#include "odelump/quotient.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>

#include "odelump/errors.hpp"

namespace odelump {

std::string_view to_string(Equivalence mode) {
  return mode == Equivalence::forward ? "fde" : "bde";
}

Polynomial collapse(const Polynomial& poly, const Partition& part) {
  return poly.renamed([&](std::uint32_t v) {
    if (v >= part.size()) throw ModelError("polynomial references a variable outside the partition");
    return static_cast<std::uint32_t>(part.representative_of(v));
  });
}

Polynomial block_sum(const PolynomialODESystem& system, const Partition& part, std::size_t block) {
  if (block >= part.block_count()) throw ModelError("block index out of range");
  Polynomial sum;
  for (std::size_t i : part.block(block)) sum += system.derivatives.at(i);
  return sum;
}

namespace {

void check_sizes(const PolynomialODESystem& system, const Partition& part) {
  system.validate();
  if (part.size() != system.size()) {
    throw ModelError("partition covers " + std::to_string(part.size()) + " variables, system has " +
                     std::to_string(system.size()));
  }
}

std::uint32_t to_block(const Partition& part, std::uint32_t v) {
  return static_cast<std::uint32_t>(part.block_of(v));
}

std::string unique_name(const std::string& wanted, std::set<std::string>& taken) {
  std::string name = wanted;
  while (taken.count(name) > 0) name += '_';
  taken.insert(name);
  return name;
}

/// Skeleton shared by both FDE builders: names, block map, summed initials.
QuotientModel fde_skeleton(const PolynomialODESystem& system, const Partition& part) {
  QuotientModel q;
  q.mode = Equivalence::forward;
  q.block_map = part.blocks();
  q.reduced.name = system.name;
  q.reduced.parameters = system.parameters;
  std::set<std::string> taken;
  for (const auto& p : system.parameters) taken.insert(p.name);
  // Singleton blocks keep their name, so reserve those first.
  for (const auto& b : part.blocks()) {
    if (b.size() == 1) taken.insert(system.variables[b.front()]);
  }
  for (const auto& b : part.blocks()) {
    if (b.size() == 1) {
      q.reduced.variables.push_back(system.variables[b.front()]);
    } else {
      q.reduced.variables.push_back(unique_name("y_" + system.variables[b.front()], taken));
    }
  }
  if (!system.initial.empty()) {
    for (const auto& b : part.blocks()) {
      std::optional<Rational> sum = Rational(0);
      for (std::size_t i : b) {
        if (!system.initial[i]) {
          sum.reset();
          break;
        }
        *sum += *system.initial[i];
      }
      q.reduced.initial.push_back(sum);
    }
  }
  return q;
}

}  // namespace

QuotientModel build_bde_quotient(const PolynomialODESystem& system, const Partition& part) {
  check_sizes(system, part);
  QuotientModel q;
  q.mode = Equivalence::backward;
  q.block_map = part.blocks();
  q.reduced.name = system.name;
  q.reduced.parameters = system.parameters;
  for (std::size_t b = 0; b < part.block_count(); ++b) {
    std::size_t rep = part.representative(b);
    q.reduced.variables.push_back(system.variables[rep]);
    q.reduced.derivatives.push_back(
        system.derivatives[rep].renamed([&](std::uint32_t v) { return to_block(part, v); }));
  }
  if (!system.initial.empty()) {
    for (const auto& block : part.blocks()) {
      std::optional<Rational> value;
      for (std::size_t i : block) {
        const auto& v = system.initial[i];
        if (!v) continue;
        if (value && *value != *v) {
          throw QuotientError(
              "BDE quotient requires blockwise-equal initial conditions (block of '" +
              system.variables[block.front()] + "')");
        }
        value = v;
      }
      q.reduced.initial.push_back(value);
    }
  }
  return q;
}

QuotientModel build_fde_quotient(const PolynomialODESystem& system, const Partition& part) {
  check_sizes(system, part);
  if (system.degree() > 2) {
    throw UnsupportedError("FB quotient needs degree <= 2 (system has degree " +
                           std::to_string(system.degree()) +
                           "); certify the partition with the SMT FDE check instead");
  }
  QuotientModel q = fde_skeleton(system, part);
  auto not_representable = [&](std::size_t target, const std::string& why) {
    return QuotientError("partition is not FB-representable: block of '" +
                         system.variables[part.representative(target)] + "' " + why +
                         "; use the SMT FDE check-only path");
  };
  for (std::size_t target = 0; target < part.block_count(); ++target) {
    Polynomial sum = block_sum(system, part, target);
    struct Group {
      std::size_t count = 0;
      Coefficient value;
      bool uniform = true;
    };
    std::map<Monomial, Group, GrlexGreater> groups;
    for (const auto& [m, c] : sum.terms()) {
      Monomial macro = m.renamed([&](std::uint32_t v) { return to_block(part, v); });
      auto [it, inserted] = groups.try_emplace(macro);
      Group& g = it->second;
      if (inserted) {
        g.value = c;
      } else if (!(g.value == c)) {
        g.uniform = false;
      }
      ++g.count;
    }
    Polynomial reduced;
    for (const auto& [macro, g] : groups) {
      std::size_t expected = 1;
      auto f = macro.factors();
      if (macro.degree() == 1) {
        expected = part.block(f[0].first).size();
      } else if (macro.degree() == 2 && f.size() == 2) {
        expected = part.block(f[0].first).size() * part.block(f[1].first).size();
      } else if (macro.degree() == 2) {
        if (part.block(f[0].first).size() > 1) {
          throw not_representable(target, "has quadratic mass inside a non-singleton block");
        }
      }
      if (!g.uniform || g.count != expected) {
        throw not_representable(target, "has coefficients that are not blockwise constant");
      }
      reduced.add_term(macro, g.value);
    }
    q.reduced.derivatives.push_back(std::move(reduced));
  }
  return q;
}

QuotientModel build_fde_quotient_by_section(const PolynomialODESystem& system, const Partition& part) {
  check_sizes(system, part);
  QuotientModel q = fde_skeleton(system, part);
  std::vector<Polynomial> section(system.size());
  for (std::size_t b = 0; b < part.block_count(); ++b) {
    section[part.representative(b)] = Polynomial::variable(static_cast<std::uint32_t>(b));
  }
  for (std::size_t target = 0; target < part.block_count(); ++target) {
    q.reduced.derivatives.push_back(block_sum(system, part, target).composed(section));
  }
  return q;
}

}  // namespace odelump
