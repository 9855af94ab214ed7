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

#include "odelump/driver/pipeline.hpp"

#include <chrono>

#include "odelump/errors.hpp"
#include "odelump/smt/reducer.hpp"
#include "odelump/syntactic/refine.hpp"

namespace odelump::driver {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;
using odelump::to_string;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<std::vector<std::string>> named_blocks(const Partition& part, const std::vector<std::string>& names) {
  std::vector<std::vector<std::string>> out;
  for (const auto& block : part.blocks()) {
    std::vector<std::string> b;
    for (std::size_t i : block) b.push_back(names[i]);
    out.push_back(std::move(b));
  }
  return out;
}

Partition initial_partition(const PolynomialODESystem& system, const PipelineOptions& options) {
  if (!options.partition_text) return Partition::trivial(system.size());
  return ingest::parse_partition(*options.partition_text, system.variables);
}

ingest::RunReport start_report(const std::string& command, const PolynomialODESystem& system,
                               const PipelineOptions& options, const Partition& initial) {
  ingest::RunReport r;
  r.command = command;
  r.model = system.name;
  r.mode = std::string(to_string(options.mode));
  r.backend = std::string(to_string(options.backend));
  r.n = system.size();
  r.m = system.monomial_count();
  r.degree = system.degree();
  r.blocks_initial = initial.block_count();
  r.details["uncertain"] = options.uncertain;
  return r;
}

void finish_partition(ingest::RunReport& r, const PolynomialODESystem& system, const Partition& part) {
  r.blocks_final = part.block_count();
  r.partition = named_blocks(part, system.variables);
}

void note(ingest::RunReport& r, const std::string& text) {
  if (!r.details.contains("notes")) r.details["notes"] = json::array();
  r.details["notes"].push_back(text);
}

json rationals(const std::vector<std::string>& names, const std::vector<Rational>& values) {
  json j = json::object();
  for (std::size_t i = 0; i < values.size(); ++i) j[names[i]] = to_string(values[i]);
  return j;
}

json witness_json(const smt::Witness& w, const PolynomialODESystem& system) {
  json j;
  j["mode"] = std::string(to_string(w.mode));
  j["assignment"] = rationals(system.variables, w.assignment);
  j["derivatives"] = rationals(system.variables, w.derivatives);
  if (w.mode == Equivalence::forward) {
    j["assignment_primed"] = rationals(system.variables, w.primed);
    j["derivatives_primed"] = rationals(system.variables, w.primed_derivatives);
  }
  json params = json::object();
  for (const auto& [name, value] : w.parameters) params[name] = to_string(value);
  j["parameters"] = params;
  if (w.pinned) j["pinned"] = true;
  return j;
}

json validation_json(const ValidationReport& v) {
  json j;
  j["mode"] = std::string(to_string(v.mode));
  j["horizon"] = v.options.horizon;
  j["step"] = v.options.step;
  j["tolerance"] = v.options.tolerance;
  j["max_abs"] = v.max_abs;
  j["max_rel"] = v.max_rel;
  j["passed"] = v.passed;
  return j;
}

/// BDE quotient, dropping initial values that differ within a block.
QuotientModel bde_quotient(const PolynomialODESystem& system, const Partition& part, ingest::RunReport& r) {
  try {
    return build_bde_quotient(system, part);
  } catch (const QuotientError&) {
    PolynomialODESystem stripped = system;
    stripped.initial.clear();
    note(r, "initial values differ within blocks; quotient written without init");
    return build_bde_quotient(stripped, part);
  }
}

/// FDE quotient: blockwise coefficients when the partition is FB, otherwise
/// the section construction (only called for certified partitions).
QuotientModel fde_quotient(const PolynomialODESystem& system, const Partition& part, ingest::RunReport& r) {
  try {
    return build_fde_quotient(system, part);
  } catch (const QuotientError&) {
    note(r, "partition is not FB-representable; quotient built by evaluating block sums on a section");
    return build_fde_quotient_by_section(system, part);
  } catch (const UnsupportedError&) {
    note(r, "degree above two; quotient built by evaluating block sums on a section");
    return build_fde_quotient_by_section(system, part);
  }
}

QuotientModel quotient_for(const PolynomialODESystem& system, const Partition& part, Equivalence mode,
                           ingest::RunReport& r) {
  return mode == Equivalence::backward ? bde_quotient(system, part, r) : fde_quotient(system, part, r);
}

/// Runs validation and records it; returns false on failure.
bool maybe_validate(PipelineResult& result, const PolynomialODESystem& system, const Partition& part,
                    const PipelineOptions& options) {
  if (!options.validate || !result.quotient) return true;
  PolynomialODESystem original = system;
  QuotientModel q = *result.quotient;
  if (q.mode == Equivalence::backward) {
    PolynomialODESystem equal = equalise_initials(system, part);
    if (equal.initial != system.initial) {
      note(result.report, "initial values equalised within blocks for validation");
      original = equal;
      q = build_bde_quotient(original, part);
    }
  }
  ValidationReport v = validate_reduction(original, q, part, options.validation);
  result.report.details["validation"] = validation_json(v);
  if (!v.passed) result.exit_code = exit_validation_failed;
  return v.passed;
}

}  // namespace

std::string_view to_string(Backend b) { return b == Backend::syntactic ? "syntactic" : "smt"; }

PolynomialODESystem prepare_system(const ingest::ModelDocument& doc, const std::vector<std::string>& uncertain) {
  PolynomialODESystem system;
  if (const auto* ode = std::get_if<PolynomialODESystem>(&doc)) {
    system = *ode;
  } else {
    system = mass_action_odes(std::get<ReactionNetwork>(doc), true);
  }
  return instantiate(system, uncertain);
}

PipelineResult run_reduce(const ingest::ModelDocument& doc, const PipelineOptions& options) {
  auto start = Clock::now();
  PolynomialODESystem system = prepare_system(doc, options.uncertain);
  Partition initial = initial_partition(system, options);
  PipelineResult result;
  auto& r = result.report;
  r = start_report("reduce", system, options, initial);

  Partition final_part = initial;
  if (options.backend == Backend::syntactic) {
    final_part = options.mode == Equivalence::backward ? syntactic::refine_bde(system, initial)
                                                       : syntactic::refine_fb(system, initial);
    r.verdict = "valid";
  } else {
    smt::SolverSession session(options.solver);
    if (options.mode == Equivalence::backward) {
      auto red = smt::largest_bde_smt(session, system, initial);
      final_part = red.partition;
      r.solver_calls = red.solver_calls;
      r.details["iterations"] = red.iterations;
      json ws = json::array();
      for (const auto& w : red.witnesses) ws.push_back(witness_json(w, system));
      r.details["counterexamples"] = ws;
      if (!red.conclusive) {
        r.verdict = "inconclusive";
        r.details["reason"] = red.reason;
        result.exit_code = exit_unknown;
      } else {
        r.verdict = "valid";
      }
    } else {
      Partition proposal = initial;
      try {
        proposal = syntactic::refine_fb(system, initial);
      } catch (const UnsupportedError& e) {
        note(r, std::string("forward bisimulation not applicable (") + e.what() + "); checking the initial partition");
      }
      auto c = smt::check_partition(session, system, proposal, Equivalence::forward);
      r.solver_calls = c.solver_calls;
      final_part = proposal;
      if (c.verdict == smt::Verdict::valid) {
        r.verdict = "valid";
      } else if (c.verdict == smt::Verdict::counterexample) {
        // Only reachable when the proposal is the unrefined initial partition.
        r.verdict = "valid";
        r.details["counterexamples"] = json::array({witness_json(*c.witness, system)});
        note(r, "initial partition refuted; falling back to the discrete partition");
        final_part = Partition::discrete(system.size());
      } else {
        r.verdict = "inconclusive";
        r.details["reason"] = c.reason;
        result.exit_code = exit_unknown;
      }
    }
  }
  finish_partition(r, system, final_part);
  if (r.verdict == "valid") {
    result.quotient = quotient_for(system, final_part, options.mode, r);
    maybe_validate(result, system, final_part, options);
  }
  r.wall_time_ms = elapsed_ms(start);
  return result;
}

PipelineResult run_check(const ingest::ModelDocument& doc, const PipelineOptions& options) {
  auto start = Clock::now();
  PolynomialODESystem system = prepare_system(doc, options.uncertain);
  Partition part = initial_partition(system, options);
  PipelineResult result;
  auto& r = result.report;
  r = start_report("check", system, options, part);
  finish_partition(r, system, part);

  if (options.backend == Backend::syntactic) {
    auto c = options.mode == Equivalence::backward ? syntactic::check_bde(system, part)
                                                   : syntactic::check_fb(system, part);
    r.verdict = c.valid() ? "valid" : "invalid";
    json vs = json::array();
    for (const auto& v : c.violations) vs.push_back(v.description);
    r.details["violations"] = vs;
  } else {
    smt::SolverSession session(options.solver);
    auto c = smt::check_partition(session, system, part, options.mode);
    r.solver_calls = c.solver_calls;
    if (c.verdict == smt::Verdict::valid) {
      r.verdict = "valid";
    } else if (c.verdict == smt::Verdict::counterexample) {
      r.verdict = "invalid";
      r.details["counterexamples"] = json::array({witness_json(*c.witness, system)});
    } else {
      r.verdict = "unknown";
      r.details["reason"] = c.reason;
    }
  }
  if (r.verdict == "valid") {
    result.quotient = quotient_for(system, part, options.mode, r);
    maybe_validate(result, system, part, options);
  } else {
    result.exit_code = r.verdict == "invalid" ? exit_invalid_partition : exit_unknown;
  }
  r.wall_time_ms = elapsed_ms(start);
  return result;
}

PipelineResult run_validate(const ingest::ModelDocument& doc, const PipelineOptions& options) {
  auto start = Clock::now();
  PolynomialODESystem system = prepare_system(doc, options.uncertain);
  Partition part = initial_partition(system, options);
  PipelineResult result;
  auto& r = result.report;
  r = start_report("validate", system, options, part);
  finish_partition(r, system, part);
  QuotientModel q = options.mode == Equivalence::backward ? build_bde_quotient(system, part)
                                                          : fde_quotient(system, part, r);
  ValidationReport v = validate_reduction(system, q, part, options.validation);
  r.details["validation"] = validation_json(v);
  json blocks = json::array();
  for (const auto& d : v.blocks) {
    blocks.push_back({{"block", r.partition[d.block]}, {"max_abs", d.max_abs}, {"max_rel", d.max_rel}});
  }
  r.details["validation"]["blocks"] = blocks;
  r.verdict = v.passed ? "pass" : "fail";
  result.exit_code = v.passed ? exit_ok : exit_validation_failed;
  result.quotient = std::move(q);
  r.wall_time_ms = elapsed_ms(start);
  return result;
}

nlohmann::json without_wall_times(const nlohmann::json& report) {
  if (report.is_object()) {
    json out = json::object();
    for (auto it = report.begin(); it != report.end(); ++it) {
      if (it.key().rfind("wall_time", 0) == 0) continue;
      out[it.key()] = without_wall_times(it.value());
    }
    return out;
  }
  if (report.is_array()) {
    json out = json::array();
    for (const auto& v : report) out.push_back(without_wall_times(v));
    return out;
  }
  return report;
}

}  // namespace odelump::driver
