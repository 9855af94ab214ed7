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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "odelump/driver/bench.hpp"
#include "odelump/driver/pipeline.hpp"
#include "odelump/driver/simulate.hpp"
#include "odelump/errors.hpp"
#include "odelump/ingest/parser.hpp"
#include "odelump/ingest/printer.hpp"
#include "odelump/smt/reducer.hpp"
#include "odelump/syntactic/refine.hpp"
#include "oracle.hpp"
#include "random_systems.hpp"

using namespace odelump;
using namespace odelump::driver;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned thresholds.
constexpr double validation_tolerance = 1e-6;
constexpr double validation_horizon = 10.0;
constexpr double validation_step = 1e-3;
constexpr double worked_example_seconds = 1.0;
constexpr std::size_t worked_example_max_calls = 2;
constexpr std::size_t random_runs = 200;
constexpr std::size_t random_max_n = 6;
constexpr double random_max_unknown_fraction = 0.05;
constexpr double random_seconds = 600.0;
constexpr std::size_t scale_n = 10'000;
constexpr std::size_t scale_m = 100'000;
constexpr double scale_seconds = 30.0;
constexpr double gap_factor = 10.0;
constexpr std::size_t gap_sizes[] = {50, 100, 200};
constexpr std::chrono::milliseconds query_limit{60'000};

const ValidationOptions gate{validation_horizon, validation_step, validation_tolerance};

const std::string solver_path = ODELUMP_SOLVER;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path data(const std::string& name) { return fs::path(ODELUMP_TEST_DATA) / name; }

smt::SolverSession make_session() {
  smt::SolverConfig c;
  c.executable = solver_path;
  c.time_limit = query_limit;
  return smt::SolverSession(c);
}

/// Parameters stay symbolic with their bound values; see cascade().
PolynomialODESystem cascade_symbolic(const std::string& k1, const std::string& k2, const std::string& init) {
  return ingest::parse_ode("model cascade; param k1 = " + k1 + ", k2 = " + k2 + "; var x1, x2, x3; init " + init +
                           "; d(x1) = -x1; d(x2) = k1*x1 - x2; d(x3) = k2*x1 - x3;");
}

PolynomialODESystem cascade(const std::string& k1, const std::string& k2, const std::string& init) {
  return instantiate(cascade_symbolic(k1, k2, init));
}

/// Collects failure reasons for one criterion.
struct Outcome {
  std::vector<std::string> problems;
  std::vector<std::string> facts;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  void fact(const std::string& what) { facts.push_back(what); }
};

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

// Every reduction validated for criterion 5, across criteria 1-4.
struct Gate {
  std::size_t checked = 0;
  std::vector<std::string> failures;

  void run(const std::string& label, const PolynomialODESystem& system, const Partition& part, Equivalence mode) {
    ++checked;
    try {
      PolynomialODESystem original = mode == Equivalence::backward ? equalise_initials(system, part) : system;
      QuotientModel q = mode == Equivalence::backward ? build_bde_quotient(original, part)
                                                      : build_fde_quotient(original, part);
      auto v = validate_reduction(original, q, part, gate);
      if (!v.passed) failures.push_back(label + " (max abs " + fmt(v.max_abs) + ", max rel " + fmt(v.max_rel) + ")");
    } catch (const std::exception& e) {
      failures.push_back(label + " (" + e.what() + ")");
    }
  }
};

Gate semantic_gate;
int failed = 0;

void report(int number, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto start = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.problems.push_back(std::string("exception: ") + e.what());
  }
  double secs = seconds_since(start);
  bool ok = o.problems.empty();
  if (!ok) ++failed;
  std::cout << "criterion " << number << ": " << (ok ? "PASS" : "FAIL") << "  " << title << " [" << fmt(secs)
            << " s]";
  for (const auto& f : o.facts) std::cout << "; " << f;
  for (const auto& p : o.problems) std::cout << "; FAILED: " << p;
  std::cout << std::endl;
}

void criterion1(Outcome& o) {
  auto start = Clock::now();
  auto s = cascade("1", "1", "x1 = 1, x2 = 0, x3 = 0");
  Partition expected(3, {{0}, {1, 2}});
  auto expected_quotient = ingest::parse_ode("var x1, x2; d(x1) = -x1; d(x2) = x1 - x2;");

  Partition syn = syntactic::refine_bde(s, Partition::trivial(3));
  o.require(syn == expected, "syntactic partition " + syn.to_string(s.variables));
  auto q = build_bde_quotient(s, syn);
  o.require(q.reduced.derivatives == expected_quotient.derivatives, "syntactic quotient differs");
  semantic_gate.run("c1 syntactic", s, syn, Equivalence::backward);

  auto session = make_session();
  auto red = smt::largest_bde_smt(session, s, Partition::trivial(3));
  o.require(red.conclusive, "smt inconclusive: " + red.reason);
  o.require(red.partition == expected, "smt partition " + red.partition.to_string(s.variables));
  o.require(red.solver_calls <= worked_example_max_calls,
            "smt used " + std::to_string(red.solver_calls) + " solver calls");
  o.fact("smt calls " + std::to_string(red.solver_calls));
  if (!red.witnesses.empty()) {
    const auto& w = red.witnesses.front();
    bool grouped = w.derivatives[1] == w.derivatives[2] && w.derivatives[0] != w.derivatives[1];
    o.require(grouped, "first counterexample does not separate {x1} from {x2, x3}");
    o.require(smt::split_by_witness(Partition::trivial(3), w) == expected, "first split differs");
    o.fact("first witness f = (" + to_string(w.derivatives[0]) + ", " + to_string(w.derivatives[1]) + ", " +
           to_string(w.derivatives[2]) + ")");
  } else {
    o.require(false, "no counterexample recorded");
  }
  auto qs = build_bde_quotient(s, red.partition);
  o.require(qs.reduced.derivatives == expected_quotient.derivatives, "smt quotient differs");
  semantic_gate.run("c1 smt", s, red.partition, Equivalence::backward);
  double secs = seconds_since(start);
  o.require(secs < worked_example_seconds, "took " + fmt(secs) + " s");
}

void criterion2(Outcome& o) {
  auto start = Clock::now();
  auto s = cascade("1", "2", "x1 = 1, x2 = 0.5, x3 = 0.25");
  Partition part(3, {{0}, {1, 2}});
  o.require(syntactic::check_fb(s, part).valid(), "check_fb rejects the partition");
  auto session = make_session();
  auto c = smt::check_partition(session, s, part, Equivalence::forward);
  o.require(c.verdict == smt::Verdict::valid, "SMT FDE check is not unsat: " + c.reason);
  auto q = build_fde_quotient(s, part);
  auto expected = ingest::parse_ode("var x1, y; d(x1) = -x1; d(y) = 3*x1 - y;");
  o.require(q.reduced.derivatives == expected.derivatives, "quotient is not y' = 3*x1 - y");
  o.require(q.reduced.initial.size() == 2 && q.reduced.initial[1] == Rational(3, 4), "y(0) is not 3/4");
  auto v = validate_reduction(s, q, part, gate);
  o.require(v.passed, "validation failed, max abs " + fmt(v.max_abs));
  o.fact("validation max abs " + fmt(v.max_abs));
  semantic_gate.run("c2", s, part, Equivalence::forward);
  double secs = seconds_since(start);
  o.require(secs < worked_example_seconds, "took " + fmt(secs) + " s");
}

void criterion3(Outcome& o) {
  auto s = cascade("1", "2", "x1 = 1, x2 = 0, x3 = 0");
  Partition discrete = Partition::discrete(3);
  Partition syn = syntactic::refine_bde(s, Partition::trivial(3));
  o.require(syn == discrete, "syntactic gives " + syn.to_string(s.variables));
  semantic_gate.run("c3 syntactic", s, syn, Equivalence::backward);
  auto session = make_session();
  auto red = smt::largest_bde_smt(session, s, Partition::trivial(3));
  o.require(red.conclusive && red.partition == discrete, "smt gives " + red.partition.to_string(s.variables));
  semantic_gate.run("c3 smt", s, red.partition, Equivalence::backward);

  std::vector<std::string> free = {"k1", "k2"};
  auto c = smt::check_uncertain(session, cascade_symbolic("1", "2", "x1 = 1, x2 = 0, x3 = 0"), Partition(3, {{0}, {1, 2}}), Equivalence::backward, free);
  o.require(c.verdict == smt::Verdict::counterexample, "no counterexample with k1, k2 free");
  if (c.witness) {
    std::optional<Rational> k1, k2;
    for (const auto& [name, value] : c.witness->parameters) {
      if (name == "k1") k1 = value;
      if (name == "k2") k2 = value;
    }
    o.require(k1 && k2 && *k1 != *k2, "counterexample does not have k1 != k2");
    if (k1 && k2) o.fact("counterexample k1 = " + to_string(*k1) + ", k2 = " + to_string(*k2));
  }

  // Same through the pipeline, as the CLI runs it.
  PipelineOptions opts;
  opts.backend = Backend::smt;
  opts.solver.executable = solver_path;
  opts.uncertain = free;
  auto run = run_reduce(ingest::parse_model(slurp(data("cascade.ode"))), opts);
  o.require(run.report.blocks_final == 3, "pipeline with --uncertain did not give the discrete partition");
  o.require(!run.report.details["counterexamples"].empty() &&
                run.report.details["counterexamples"][0]["parameters"].contains("k1"),
            "pipeline report lacks counterexample parameter values");
}

void criterion4(Outcome& o) {
  auto start = Clock::now();
  auto session = make_session();
  std::size_t unknown = 0;
  std::size_t bde_mismatch = 0, smt_mismatch = 0, fb_mismatch = 0;
  std::size_t nontrivial = 0;
  for (std::uint64_t seed = 1; seed <= random_runs; ++seed) {
    auto inst = testing::random_instance(seed, random_max_n);
    const auto& s = inst.system;
    std::string label = "c4 seed " + std::to_string(seed);
    Partition bde_oracle = testing::oracle_coarsest(s, testing::OracleMode::bde, inst.initial);
    Partition fb_oracle = testing::oracle_coarsest(s, testing::OracleMode::fb, inst.initial);
    if (bde_oracle.block_count() < s.size()) ++nontrivial;

    Partition bde = syntactic::refine_bde(s, inst.initial);
    if (bde != bde_oracle) ++bde_mismatch;
    semantic_gate.run(label + " refine_bde", s, bde, Equivalence::backward);

    Partition fb = syntactic::refine_fb(s, inst.initial);
    if (fb != fb_oracle) ++fb_mismatch;
    semantic_gate.run(label + " refine_fb", s, fb, Equivalence::forward);

    auto red = smt::largest_bde_smt(session, s, inst.initial);
    if (!red.conclusive) {
      ++unknown;
      continue;
    }
    if (red.partition != bde_oracle) ++smt_mismatch;
    semantic_gate.run(label + " largest_bde_smt", s, red.partition, Equivalence::backward);
  }
  o.require(bde_mismatch == 0, std::to_string(bde_mismatch) + " refine_bde mismatches");
  o.require(smt_mismatch == 0, std::to_string(smt_mismatch) + " largest_bde_smt mismatches");
  o.require(fb_mismatch == 0, std::to_string(fb_mismatch) + " refine_fb mismatches");
  o.require(static_cast<double>(unknown) < random_max_unknown_fraction * static_cast<double>(random_runs),
            std::to_string(unknown) + " unknowns");
  double secs = seconds_since(start);
  o.require(secs < random_seconds, "took " + fmt(secs) + " s");
  o.fact(std::to_string(random_runs) + " systems, " + std::to_string(nontrivial) + " with a nontrivial BDE, " +
         std::to_string(unknown) + " unknown");
}

void criterion5(Outcome& o) {
  o.require(semantic_gate.checked > 0, "no reductions were validated");
  o.fact(std::to_string(semantic_gate.checked - semantic_gate.failures.size()) + " of " +
         std::to_string(semantic_gate.checked) + " reductions passed at tol " + fmt(validation_tolerance));
  for (std::size_t i = 0; i < semantic_gate.failures.size() && i < 5; ++i) o.require(false, semantic_gate.failures[i]);
  if (semantic_gate.failures.size() > 5) o.require(false, "...");
}

void criterion6(Outcome& o) {
  BenchSpec spec;
  spec.n = scale_n;
  spec.m = scale_m;
  spec.seed = 2026;
  // 500 pairs, 300 triples, 100 groups of five: 2400 species in groups.
  spec.groups.insert(spec.groups.end(), 500, 2);
  spec.groups.insert(spec.groups.end(), 300, 3);
  spec.groups.insert(spec.groups.end(), 100, 5);
  auto gen_start = Clock::now();
  auto model = generate_bench(spec);
  auto system = mass_action_odes(model.network);
  double gen_secs = seconds_since(gen_start);
  o.require(system.size() == scale_n, "n = " + std::to_string(system.size()));
  o.require(system.monomial_count() >= scale_m, "m = " + std::to_string(system.monomial_count()));

  auto start = Clock::now();
  Partition found = syntactic::refine_bde(system, Partition::trivial(system.size()));
  double secs = seconds_since(start);
  o.require(found == model.planted, "refine_bde did not return the planted partition");
  o.require(secs < scale_seconds, "refine_bde took " + fmt(secs) + " s");
  o.fact("n = " + std::to_string(system.size()) + ", m = " + std::to_string(system.monomial_count()) + ", " +
         std::to_string(found.block_count()) + " blocks, refine_bde " + fmt(secs) + " s (generation " +
         fmt(gen_secs) + " s)");
}

void criterion7(Outcome& o) {
  smt::SolverConfig solver;
  solver.executable = solver_path;
  solver.time_limit = query_limit;
  for (std::size_t n : gap_sizes) {
    BenchSpec spec{n, 5 * n, {2, 3, 5}, 7};
    auto r = run_bench(spec, {"syntactic", "smt"}, solver);
    const auto& syn = r.runs[0];
    const auto& smt = r.runs[1];
    o.require(syn.matches_planted, "n = " + std::to_string(n) + ": syntactic missed the planted partition");
    o.require(smt.conclusive && smt.matches_planted, "n = " + std::to_string(n) + ": smt missed the planted partition");
    double ratio = smt.wall_time_ms / std::max(syn.wall_time_ms, 1e-6);
    o.require(ratio >= gap_factor, "n = " + std::to_string(n) + ": ratio " + fmt(ratio));
    o.fact("n = " + std::to_string(n) + ": syntactic " + fmt(syn.wall_time_ms) + " ms, smt " +
           fmt(smt.wall_time_ms) + " ms, ratio " + fmt(ratio));
  }
}

void criterion8(Outcome& o) {
  auto s = instantiate(ingest::parse_ode(slurp(data("fb_gap.ode"))));
  Partition part(3, {{0}, {1, 2}});
  o.require(!syntactic::check_fb(s, part).valid(), "check_fb accepts the partition");
  auto session = make_session();
  auto c = smt::check_partition(session, s, part, Equivalence::forward);
  o.require(c.verdict == smt::Verdict::valid, "SMT FDE check does not certify the partition: " + c.reason);
  auto q = build_fde_quotient_by_section(s, part);
  auto v = validate_reduction(s, q, part, gate);
  o.require(v.passed, "validation failed, max abs " + fmt(v.max_abs));
  o.fact("quotient " + ingest::print_polynomial(q.reduced.derivatives[0], q.reduced.variables, {}) +
         ", validation max abs " + fmt(v.max_abs));
}

void criterion9(Outcome& o) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(ODELUMP_TEST_DATA)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::size_t round_trips = 0;
  for (const auto& path : files) {
    std::string name = path.filename().string();
    std::string text = slurp(path);
    if (path.extension() == ".part") {
      auto doc = ingest::parse_partition_document(text);
      std::string printed = ingest::print_partition_document(doc);
      o.require(ingest::parse_partition_document(printed) == doc, name + " changes on round trip");
      o.require(ingest::print_partition_document(ingest::parse_partition_document(printed)) == printed,
                name + " printing is not stable");
    } else if (path.extension() == ".ode" || path.extension() == ".rn") {
      auto doc = ingest::parse_model(text);
      std::string printed = ingest::print_document(doc);
      auto again = ingest::parse_model(printed);
      o.require(again == doc, name + " changes on round trip");
      o.require(ingest::print_document(again) == printed, name + " printing is not stable");
    } else {
      continue;
    }
    ++round_trips;
  }
  o.require(round_trips >= 20, "corpus has only " + std::to_string(round_trips) + " files");

  // Reports from identical runs must match byte for byte once wall times go.
  auto strip = [](const PipelineResult& r) { return without_wall_times(ingest::to_json(r.report)).dump(2); };
  std::size_t compared = 0;
  for (const char* file : {"cascade.ode", "sir.rn", "brusselator.rn", "fb_gap.ode", "multisite.rn"}) {
    for (auto backend : {Backend::syntactic, Backend::smt}) {
      for (auto mode : {Equivalence::backward, Equivalence::forward}) {
        PipelineOptions opts;
        opts.mode = mode;
        opts.backend = backend;
        opts.solver.executable = solver_path;
        opts.validate = true;
        auto doc = ingest::parse_model(slurp(data(file)));
        std::string a, b;
        try {
          a = strip(run_reduce(doc, opts));
          b = strip(run_reduce(doc, opts));
        } catch (const UnsupportedError&) {
          continue;
        }
        ++compared;
        o.require(a == b, std::string(file) + " report differs between runs");
      }
    }
  }
  BenchSpec spec{200, 1000, {2, 3, 5}, 11};
  o.require(ingest::print_network(generate_bench(spec).network) == ingest::print_network(generate_bench(spec).network),
            "generator is not deterministic");
  o.fact(std::to_string(round_trips) + " corpus files round-tripped, " + std::to_string(compared) +
         " report pairs identical");
}

}  // namespace

int main() {
  std::cout << "solver: " << (solver_path.empty() ? "none" : solver_path) << "\n";
  std::cout << "tolerance " << validation_tolerance << ", horizon " << validation_horizon << ", step "
            << validation_step << "\n";
  report(1, "worked example, BDE", criterion1);
  report(2, "worked example, FDE", criterion2);
  report(3, "parameter sensitivity", criterion3);
  report(4, "oracle equivalence on random systems", criterion4);
  report(5, "semantic gate over criteria 1-4", criterion5);
  report(6, "refine_bde at n = 10000, m >= 100000", criterion6);
  report(7, "syntactic vs SMT backend gap", criterion7);
  report(8, "exact lumping missed by FB", criterion8);
  report(9, "round trip and determinism", criterion9);
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed;
}
