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

#include "odelump/smt/reducer.hpp"

#include <algorithm>
#include <map>

#include "odelump/errors.hpp"

namespace odelump::smt {

namespace {

/// Rationals tried, in order, for symbols the solver assigned irrationally.
const std::vector<Rational>& pin_candidates() {
  static const std::vector<Rational> values = {Rational(0), Rational(1), Rational(-1), Rational(2),
                                               Rational(-2), Rational(1, 2), Rational(3), Rational(-3)};
  return values;
}

std::string strip_bars(const std::string& quoted) { return quoted.substr(1, quoted.size() - 2); }

std::vector<std::string> all_symbols(const Formula& f) {
  std::vector<std::string> out;
  for (const auto* group : {&f.variables, &f.primed, &f.parameters}) {
    for (const auto& s : *group) out.push_back(strip_bars(s));
  }
  return out;
}

std::vector<std::string> irrational_symbols(const Formula& f, const std::map<std::string, ModelValue>& model) {
  std::vector<std::string> out;
  for (const auto& s : all_symbols(f)) {
    auto it = model.find(s);
    if (it != model.end() && !it->second.exact) out.push_back(s);
  }
  return out;
}

Rational value_of(const std::map<std::string, ModelValue>& model, const std::string& quoted) {
  auto it = model.find(strip_bars(quoted));
  // Symbols missing from a model are unconstrained; any value works.
  if (it == model.end()) return Rational(0);
  return *it->second.exact;
}

std::vector<Rational> values_of(const std::map<std::string, ModelValue>& model, const std::vector<std::string>& symbols) {
  std::vector<Rational> out;
  out.reserve(symbols.size());
  for (const auto& s : symbols) out.push_back(value_of(model, s));
  return out;
}

std::vector<Rational> evaluate_all(const PolynomialODESystem& system, std::span<const Rational> x,
                                   std::span<const Rational> params) {
  std::vector<Rational> out;
  out.reserve(system.size());
  for (const auto& f : system.derivatives) out.push_back(f.evaluate(x, params));
  return out;
}

/// Builds the witness and confirms, exactly, that it refutes the partition.
/// Returns nullopt if it does not.
std::optional<Witness> build_witness(const PolynomialODESystem& system, const Partition& part, const Formula& f,
                                     const std::map<std::string, ModelValue>& model) {
  Witness w;
  w.mode = f.mode;
  std::vector<Rational> params = values_of(model, f.parameters);
  for (std::size_t p = 0; p < params.size(); ++p) w.parameters.emplace_back(system.parameters[p].name, params[p]);
  w.assignment = values_of(model, f.variables);
  if (f.mode == Equivalence::backward) {
    // Make the antecedent hold exactly: every member takes its representative's value.
    for (std::size_t i = 0; i < system.size(); ++i) w.assignment[i] = w.assignment[part.representative_of(i)];
    w.derivatives = evaluate_all(system, w.assignment, params);
    for (const auto& block : part.blocks()) {
      for (std::size_t i : block) {
        if (w.derivatives[i] != w.derivatives[block.front()]) return w;
      }
    }
    return std::nullopt;
  }
  w.primed = values_of(model, f.primed);
  for (const auto& block : part.blocks()) {
    Rational target = 0;
    for (std::size_t i : block) target += w.assignment[i];
    for (std::size_t idx = 1; idx < block.size(); ++idx) target -= w.primed[block[idx]];
    w.primed[block.front()] = target;
  }
  w.derivatives = evaluate_all(system, w.assignment, params);
  w.primed_derivatives = evaluate_all(system, w.primed, params);
  for (const auto& block : part.blocks()) {
    Rational a = 0;
    Rational b = 0;
    for (std::size_t i : block) {
      a += w.derivatives[i];
      b += w.primed_derivatives[i];
    }
    if (a != b) return w;
  }
  return std::nullopt;
}

std::string rational_term(const Rational& r) {
  std::string body = "(/ " + mpz_class(abs(r.get_num())).get_str() + ".0 " + r.get_den().get_str() + ".0)";
  return r < 0 ? "(- " + body + ")" : body;
}

CheckOutcome unknown(std::string reason, std::size_t calls) {
  CheckOutcome out;
  out.verdict = Verdict::unknown;
  out.reason = std::move(reason);
  out.solver_calls = calls;
  return out;
}

std::vector<std::string> unbound_parameters(const PolynomialODESystem& system) {
  std::vector<std::string> out;
  for (const auto& p : system.parameters) {
    if (!p.value) out.push_back(p.name);
  }
  return out;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::valid:
      return "valid";
    case Verdict::counterexample:
      return "counterexample";
    case Verdict::unknown:
      return "unknown";
  }
  return "unknown";
}

CheckOutcome check_partition(SolverSession& session, const PolynomialODESystem& input, const Partition& part,
                             Equivalence mode) {
  auto free = unbound_parameters(input);
  PolynomialODESystem system = instantiate(input, free);
  Formula f = encode(system, part, mode);
  std::size_t calls = 1;
  QueryResult r = session.check(f);
  if (r.status == SatStatus::unsat) {
    CheckOutcome out;
    out.verdict = Verdict::valid;
    out.solver_calls = calls;
    return out;
  }
  if (r.status != SatStatus::sat) return unknown(r.reason, calls);

  bool pinned = false;
  auto irrational = irrational_symbols(f, r.model);
  if (!irrational.empty()) {
    // Ask again with the offending symbols pinned to small rationals.
    bool found = false;
    for (const auto& c : pin_candidates()) {
      std::vector<std::string> extra;
      for (const auto& s : irrational) extra.push_back("(= " + quote_symbol(s) + ' ' + rational_term(c) + ')');
      ++calls;
      QueryResult again = session.check(f, extra);
      if (again.status == SatStatus::unsat) continue;
      if (again.status != SatStatus::sat) return unknown(again.reason, calls);
      if (!irrational_symbols(f, again.model).empty()) continue;
      r = std::move(again);
      found = true;
      pinned = true;
      break;
    }
    if (!found) return unknown("solver model has irrational values that could not be pinned to rationals", calls);
  }
  auto w = build_witness(system, part, f, r.model);
  if (!w) return unknown("solver model does not refute the partition under exact re-evaluation", calls);
  w->pinned = pinned;
  CheckOutcome out;
  out.verdict = Verdict::counterexample;
  out.witness = std::move(w);
  out.solver_calls = calls;
  return out;
}

CheckOutcome check_uncertain(SolverSession& session, const PolynomialODESystem& system, const Partition& part,
                             Equivalence mode, std::span<const std::string> free_parameters) {
  if (free_parameters.empty()) return check_partition(session, system, part, mode);
  PolynomialODESystem opened = system;
  for (const auto& name : free_parameters) {
    auto idx = opened.parameter_index(name);
    if (!idx) throw ModelError("unknown uncertain parameter '" + name + "'");
    opened.parameters[*idx].value.reset();
  }
  return check_partition(session, opened, part, mode);
}

Partition split_by_witness(const Partition& part, const Witness& witness) {
  if (witness.derivatives.size() != part.size()) throw SolverModelError("witness does not match the partition");
  std::vector<std::size_t> labels(part.size());
  std::size_t next = 0;
  for (const auto& block : part.blocks()) {
    std::vector<std::pair<Rational, std::size_t>> groups;
    for (std::size_t i : block) {
      const Rational& v = witness.derivatives[i];
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == v; });
      if (it == groups.end()) {
        groups.emplace_back(v, next);
        labels[i] = next++;
      } else {
        labels[i] = it->second;
      }
    }
  }
  Partition out = Partition::from_labels(labels);
  if (out.block_count() == part.block_count()) {
    throw SolverModelError("witness separates no block; refusing to loop");
  }
  return out;
}

SmtReduction largest_bde_smt(SolverSession& session, const PolynomialODESystem& system, const Partition& initial) {
  if (initial.size() != system.size()) throw ModelError("partition size does not match the system");
  SmtReduction out;
  out.partition = initial;
  while (true) {
    ++out.iterations;
    CheckOutcome c = check_partition(session, system, out.partition, Equivalence::backward);
    out.solver_calls += c.solver_calls;
    if (c.verdict == Verdict::valid) return out;
    if (c.verdict == Verdict::unknown) {
      out.conclusive = false;
      out.reason = c.reason;
      return out;
    }
    try {
      out.partition = split_by_witness(out.partition, *c.witness);
    } catch (const SolverModelError& e) {
      out.conclusive = false;
      out.reason = e.what();
      return out;
    }
    out.witnesses.push_back(std::move(*c.witness));
  }
}

}  // namespace odelump::smt
