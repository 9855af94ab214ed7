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

#include "odelump/smt/encode.hpp"

#include <sstream>

#include "odelump/errors.hpp"

namespace odelump::smt {

namespace {

std::string real_literal(const mpz_class& z) {
  if (z < 0) return "(- " + mpz_class(-z).get_str() + ".0)";
  return z.get_str() + ".0";
}

std::string rational_literal(const Rational& r) {
  if (r.get_den() == 1) return real_literal(r.get_num());
  std::string body = "(/ " + mpz_class(abs(r.get_num())).get_str() + ".0 " + r.get_den().get_str() + ".0)";
  return r < 0 ? "(- " + body + ")" : body;
}

std::string product(const std::vector<std::string>& factors) {
  if (factors.empty()) return "1.0";
  if (factors.size() == 1) return factors.front();
  std::string out = "(*";
  for (const auto& f : factors) out += ' ' + f;
  return out + ')';
}

std::string sum(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0.0";
  if (terms.size() == 1) return terms.front();
  std::string out = "(+";
  for (const auto& t : terms) out += ' ' + t;
  return out + ')';
}

std::string conjunction(const std::vector<std::string>& parts) {
  if (parts.empty()) return "true";
  if (parts.size() == 1) return parts.front();
  std::string out = "(and";
  for (const auto& p : parts) out += ' ' + p;
  return out + ')';
}

void append_power(std::vector<std::string>& factors, const Monomial& m, const std::vector<std::string>& symbols) {
  for (const auto& [index, exp] : m.factors()) {
    if (index >= symbols.size()) throw ModelError("symbol index out of range while encoding");
    for (std::uint32_t e = 0; e < exp; ++e) factors.push_back(symbols[index]);
  }
}

std::vector<std::string> symbols_for(const std::vector<std::string>& names, const std::string& suffix) {
  std::vector<std::string> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(quote_symbol(n + suffix));
  return out;
}

std::vector<std::string> parameter_symbols(const PolynomialODESystem& system) {
  std::vector<std::string> out;
  for (const auto& p : system.parameters) {
    if (p.value) throw ModelError("parameter '" + p.name + "' is bound; instantiate the system before encoding");
    out.push_back(quote_symbol(p.name));
  }
  return out;
}

void check_sizes(const PolynomialODESystem& system, const Partition& part) {
  system.validate();
  if (part.size() != system.size()) throw ModelError("partition size does not match the system");
}

}  // namespace

std::string quote_symbol(const std::string& name) {
  if (name.find('|') != std::string::npos || name.find('\\') != std::string::npos) {
    throw ModelError("name '" + name + "' cannot be used as a solver symbol");
  }
  return '|' + name + '|';
}

std::string to_smtlib(const Polynomial& poly, const std::vector<std::string>& variables,
                      const std::vector<std::string>& parameters) {
  std::vector<std::string> terms;
  for (const auto& [m, c] : poly.terms()) {
    for (const auto& [pm, value] : c.terms()) {
      std::vector<std::string> factors;
      if (value != 1 || (m.is_constant() && pm.is_constant())) factors.push_back(rational_literal(value));
      append_power(factors, pm, parameters);
      append_power(factors, m, variables);
      terms.push_back(product(factors));
    }
  }
  return sum(terms);
}

std::vector<std::string> Formula::declarations() const {
  std::vector<std::string> out;
  auto declare = [&](const std::vector<std::string>& symbols) {
    for (const auto& s : symbols) out.push_back("(declare-const " + s + " Real)");
  };
  declare(variables);
  declare(primed);
  declare(parameters);
  return out;
}

std::string Formula::script() const {
  std::ostringstream out;
  out << "(set-option :produce-models true)\n";
  out << "(set-logic " << logic << ")\n";
  for (const auto& d : declarations()) out << d << '\n';
  out << "(assert " << assertion << ")\n";
  out << "(check-sat)\n(get-model)\n(exit)\n";
  return out.str();
}

Formula encode_bde(const PolynomialODESystem& system, const Partition& part) {
  check_sizes(system, part);
  Formula f;
  f.mode = Equivalence::backward;
  f.variables = symbols_for(system.variables, "");
  f.parameters = parameter_symbols(system);
  std::vector<std::string> antecedent;
  std::vector<std::string> consequent;
  for (const auto& block : part.blocks()) {
    std::size_t rep = block.front();
    std::string f_rep = to_smtlib(system.derivatives[rep], f.variables, f.parameters);
    for (std::size_t idx = 1; idx < block.size(); ++idx) {
      std::size_t i = block[idx];
      antecedent.push_back("(= " + f.variables[rep] + ' ' + f.variables[i] + ')');
      consequent.push_back("(= " + f_rep + ' ' + to_smtlib(system.derivatives[i], f.variables, f.parameters) + ')');
    }
  }
  f.assertion = "(and " + conjunction(antecedent) + " (not " + conjunction(consequent) + "))";
  return f;
}

Formula encode_fde(const PolynomialODESystem& system, const Partition& part) {
  check_sizes(system, part);
  Formula f;
  f.mode = Equivalence::forward;
  f.variables = symbols_for(system.variables, "");
  f.primed = symbols_for(system.variables, "'");
  f.parameters = parameter_symbols(system);
  std::vector<std::string> antecedent;
  std::vector<std::string> consequent;
  for (const auto& block : part.blocks()) {
    std::vector<std::string> xs;
    std::vector<std::string> xps;
    Polynomial fsum;
    for (std::size_t i : block) {
      xs.push_back(f.variables[i]);
      xps.push_back(f.primed[i]);
      fsum += system.derivatives[i];
    }
    antecedent.push_back("(= " + sum(xs) + ' ' + sum(xps) + ')');
    consequent.push_back("(= " + to_smtlib(fsum, f.variables, f.parameters) + ' ' +
                         to_smtlib(fsum, f.primed, f.parameters) + ')');
  }
  f.assertion = "(and " + conjunction(antecedent) + " (not " + conjunction(consequent) + "))";
  return f;
}

Formula encode(const PolynomialODESystem& system, const Partition& part, Equivalence mode) {
  return mode == Equivalence::backward ? encode_bde(system, part) : encode_fde(system, part);
}

}  // namespace odelump::smt
