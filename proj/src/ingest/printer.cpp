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

#include "odelump/ingest/printer.hpp"

#include <sstream>
#include <utility>
#include <vector>

namespace odelump::ingest {

namespace {

std::string monomial_text(const Monomial& m, std::span<const std::string> names) {
  std::string out;
  for (const auto& [index, exp] : m.factors()) {
    if (!out.empty()) out += '*';
    out += index < names.size() ? names[index] : "?" + std::to_string(index);
    if (exp > 1) out += '^' + std::to_string(exp);
  }
  return out;
}

/// One signed term: `negative` plus the unsigned body.
struct SignedTerm {
  bool negative = false;
  std::string body;
};

std::string join_terms(const std::vector<SignedTerm>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == 0) {
      if (terms[i].negative) out += '-';
    } else {
      out += terms[i].negative ? " - " : " + ";
    }
    out += terms[i].body;
  }
  return out;
}

SignedTerm rational_term(const Rational& value, const std::string& monomial) {
  SignedTerm t;
  t.negative = value < 0;
  t.body = to_string(Rational(abs(value)));
  if (!monomial.empty()) t.body += '*' + monomial;
  return t;
}

}  // namespace

std::string print_coefficient(const Coefficient& c, std::span<const std::string> parameters) {
  std::vector<SignedTerm> terms;
  for (const auto& [m, value] : c.terms()) {
    std::string mono = monomial_text(m, parameters);
    if (!mono.empty() && abs(value) == 1) {
      terms.push_back({value < 0, mono});
    } else {
      terms.push_back(rational_term(value, mono));
    }
  }
  return join_terms(terms);
}

std::string print_polynomial(const Polynomial& poly, std::span<const std::string> variables,
                             std::span<const std::string> parameters) {
  std::vector<SignedTerm> terms;
  for (const auto& [m, c] : poly.terms()) {
    std::string mono = monomial_text(m, variables);
    if (c.is_rational()) {
      terms.push_back(rational_term(c.rational_value(), mono));
      continue;
    }
    if (c.terms().size() == 1) {
      const auto& [pm, value] = *c.terms().begin();
      std::string body = monomial_text(pm, parameters);
      if (abs(value) != 1) body = to_string(Rational(abs(value))) + '*' + body;
      if (!mono.empty()) body += '*' + mono;
      terms.push_back({value < 0, body});
      continue;
    }
    std::string body = '(' + print_coefficient(c, parameters) + ')';
    if (!mono.empty()) body += '*' + mono;
    terms.push_back({false, body});
  }
  return join_terms(terms);
}

namespace {

std::vector<std::string> parameter_names(const std::vector<Parameter>& params) {
  std::vector<std::string> names;
  for (const auto& p : params) names.push_back(p.name);
  return names;
}

void print_header(std::ostringstream& out, const std::string& name, const std::vector<Parameter>& params) {
  if (!name.empty()) out << "model " << name << ";\n";
  if (!params.empty()) {
    out << "param ";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i > 0) out << ", ";
      out << params[i].name;
      if (params[i].value) out << " = " << to_string(*params[i].value);
    }
    out << ";\n";
  }
}

void print_symbols(std::ostringstream& out, const char* keyword, const std::vector<std::string>& names) {
  out << keyword << ' ';
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out << ", ";
    out << names[i];
  }
  out << ";\n";
}

void print_initial(std::ostringstream& out, const std::vector<std::string>& names,
                   const std::vector<std::optional<Rational>>& initial) {
  bool first = true;
  for (std::size_t i = 0; i < initial.size(); ++i) {
    if (!initial[i]) continue;
    out << (first ? "init " : ", ") << names[i] << " = " << to_string(*initial[i]);
    first = false;
  }
  if (!first) out << ";\n";
}

std::string multiset_text(const SpeciesMultiset& ms, const std::vector<std::string>& species) {
  if (ms.empty()) return "0";
  std::string out;
  for (const auto& [s, k] : ms) {
    if (!out.empty()) out += " + ";
    if (k > 1) out += std::to_string(k) + ' ';
    out += species[s];
  }
  return out;
}

}  // namespace

std::string print_model(const PolynomialODESystem& system) {
  std::ostringstream out;
  auto params = parameter_names(system.parameters);
  print_header(out, system.name, system.parameters);
  print_symbols(out, "var", system.variables);
  print_initial(out, system.variables, system.initial);
  for (std::size_t i = 0; i < system.size(); ++i) {
    out << "d(" << system.variables[i] << ") = "
        << print_polynomial(system.derivatives[i], system.variables, params) << ";\n";
  }
  return out.str();
}

std::string print_network(const ReactionNetwork& net) {
  std::ostringstream out;
  auto params = parameter_names(net.parameters);
  print_header(out, net.name, net.parameters);
  print_symbols(out, "species", net.species);
  print_initial(out, net.species, net.initial);
  for (const auto& r : net.reactions) {
    out << multiset_text(r.reagents, net.species) << " -> " << multiset_text(r.products, net.species)
        << " @ " << print_coefficient(r.rate, params) << ";\n";
  }
  return out.str();
}

std::string print_document(const ModelDocument& doc) {
  if (const auto* ode = std::get_if<PolynomialODESystem>(&doc)) return print_model(*ode);
  return print_network(std::get<ReactionNetwork>(doc));
}

std::string print_partition(const Partition& part, std::span<const std::string> names) {
  return part.to_string(names) + "\n";
}

std::string print_partition_document(const PartitionDocument& doc) {
  std::string out;
  if (doc.unlisted == UnlistedPolicy::singletons) out += "unlisted = singleton;\n";
  for (const auto& b : doc.blocks) {
    out += '{';
    for (std::size_t i = 0; i < b.size(); ++i) out += (i ? ", " : "") + b[i];
    out += "}\n";
  }
  return out;
}

}  // namespace odelump::ingest
