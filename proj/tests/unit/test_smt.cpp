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

#include <doctest.h>

#include <filesystem>
#include <random>

#include "odelump/errors.hpp"
#include "odelump/ingest/parser.hpp"
#include "odelump/smt/reducer.hpp"
#include "odelump/syntactic/refine.hpp"
#include "random_systems.hpp"

using namespace odelump;
using namespace odelump::smt;

namespace {

const std::string solver_path = ODELUMP_SOLVER;
const bool no_solver = solver_path.empty();

SolverSession make_session(std::chrono::milliseconds limit = std::chrono::milliseconds(60'000)) {
  SolverConfig c;
  c.executable = solver_path;
  c.time_limit = limit;
  return SolverSession(c);
}

PolynomialODESystem cascade(const std::string& params) {
  return ingest::parse_ode("param " + params +
                           "; var x1, x2, x3; d(x1) = -x1; d(x2) = k1*x1 - x2; d(x3) = k2*x1 - x3;");
}

const Partition observe_x1(3, {{0}, {1, 2}});

Witness bde_witness(std::vector<long> derivatives) {
  Witness w;
  for (long d : derivatives) {
    w.assignment.emplace_back(0);
    w.derivatives.emplace_back(d);
  }
  return w;
}

}  // namespace

TEST_CASE("s-expressions") {
  auto es = parse_sexprs("sat (a (b |c d|) \"x\"\"y\") ; comment\n 1.5");
  REQUIRE(es.size() == 3);
  CHECK(es[0].is_atom("sat"));
  CHECK(es[1].head() == "a");
  CHECK(es[1].items[1].items[1].text == "c d");
  CHECK(es[1].items[2].kind == SExpr::Kind::string);
  CHECK(es[1].items[2].text == "x\"y");
  CHECK(es[2].text == "1.5");
  CHECK_THROWS_AS(parse_sexprs("(a b"), SolverError);
  CHECK_THROWS_AS(parse_sexprs(")"), SolverError);

  SExprReader r;
  r.feed("(a (b");
  CHECK_FALSE(r.next().has_value());
  r.feed(")) uns");
  CHECK(r.next()->head() == "a");
  CHECK_FALSE(r.next().has_value());
  r.feed("at\n");
  CHECK(r.next()->is_atom("unsat"));
}

TEST_CASE("model values are read exactly") {
  auto model = parse_model(parse_sexprs(R"((
  (define-fun |x1'| () Real
    (/ 1.0 3.0))
  (define-fun x1 () Real
    (root-obj (+ (^ x 2) (- 2)) 1))
  (define-fun k () Real
    (- 2.0))
  (define-fun big () Real 12345678901234567890.25)
  (define-fun f ((a Real)) Real a)
))")
                                .front());
  CHECK(model.size() == 4);
  CHECK(model["x1'"].exact == Rational(1, 3));
  CHECK_FALSE(model["x1"].exact.has_value());
  CHECK(model["k"].exact == Rational(-2));
  CHECK(model["big"].exact == parse_rational("12345678901234567890.25"));
  // Older solvers wrap definitions in (model ...).
  auto old = parse_model(parse_sexprs("(model (define-fun y () Real 0.5))").front());
  CHECK(old["y"].exact == Rational(1, 2));
}

TEST_CASE("encode_bde matches the implication on the cascade") {
  auto f = encode_bde(cascade("k1, k2"), observe_x1);
  CHECK(f.assertion ==
        "(and (= |x2| |x3|) (not (= (+ (* |k1| |x1|) (* (- 1.0) |x2|)) (+ (* |k2| |x1|) (* (- 1.0) |x3|)))))");
  CHECK(f.parameters == std::vector<std::string>{"|k1|", "|k2|"});
  auto discrete = encode_bde(cascade("k1, k2"), Partition::discrete(3));
  CHECK(discrete.assertion == "(and true (not true))");
  CHECK(f.script().find("(set-logic QF_NRA)") != std::string::npos);
  CHECK_THROWS_AS(encode_bde(cascade("k1 = 1, k2"), observe_x1), ModelError);
}

TEST_CASE("encode_fde uses two copies") {
  auto f = encode_fde(cascade("k1, k2"), observe_x1);
  CHECK(f.primed.front() == "|x1'|");
  CHECK(f.assertion.find("(= (+ |x2| |x3|) (+ |x2'| |x3'|))") != std::string::npos);
  CHECK(f.declarations().size() == 8);
}

TEST_CASE("split_by_witness") {
  CHECK(split_by_witness(Partition::trivial(3), bde_witness({-1, 0, 0})) == observe_x1);
  CHECK(split_by_witness(Partition::trivial(3), bde_witness({1, 2, 3})) == Partition::discrete(3));
  Partition two(4, {{0, 1}, {2, 3}});
  CHECK(split_by_witness(two, bde_witness({5, 5, 1, 2})) == Partition(4, {{0, 1}, {2}, {3}}));
  CHECK_THROWS_AS(split_by_witness(observe_x1, bde_witness({1, 2, 2})), SolverModelError);
}

TEST_CASE("missing solver executable is a transport error" * doctest::skip(no_solver)) {
  SolverConfig c;
  c.executable = "/nonexistent/solver";
  SolverSession s(c);
  CHECK_THROWS_AS(s.check(encode_bde(cascade("k1, k2"), observe_x1)), SolverError);
}

TEST_CASE("check_partition on the cascade" * doctest::skip(no_solver)) {
  auto session = make_session();
  SUBCASE("k1 = k2 = 1") {
    auto s = cascade("k1 = 1, k2 = 1");
    CHECK(check_partition(session, s, observe_x1, Equivalence::backward).verdict == Verdict::valid);
    auto c = check_partition(session, s, Partition::trivial(3), Equivalence::backward);
    REQUIRE(c.verdict == Verdict::counterexample);
    const auto& w = *c.witness;
    CHECK(w.assignment[0] == w.assignment[1]);
    CHECK(w.assignment[1] == w.assignment[2]);
    CHECK(w.derivatives[0] == -w.assignment[0]);
    CHECK(w.derivatives[1] == 0);
    CHECK(w.derivatives[2] == 0);
    CHECK(split_by_witness(Partition::trivial(3), w) == observe_x1);
  }
  SUBCASE("discrete is always valid") {
    CHECK(check_partition(session, cascade("k1, k2"), Partition::discrete(3), Equivalence::backward).verdict ==
          Verdict::valid);
    CHECK(check_partition(session, cascade("k1, k2"), Partition::discrete(3), Equivalence::forward).verdict ==
          Verdict::valid);
  }
  SUBCASE("forward: sums x2 + x3 for any rates") {
    CHECK(check_partition(session, cascade("k1, k2"), observe_x1, Equivalence::forward).verdict == Verdict::valid);
  }
  SUBCASE("forward: block sums do not determine x2^2") {
    auto s = ingest::parse_ode("var x1, x2, x3; d(x1) = x2^2; d(x2) = 0; d(x3) = 0;");
    auto c = check_partition(session, s, observe_x1, Equivalence::forward);
    REQUIRE(c.verdict == Verdict::counterexample);
    const auto& w = *c.witness;
    CHECK(w.assignment[1] + w.assignment[2] == w.primed[1] + w.primed[2]);
    CHECK(w.derivatives[0] != w.primed_derivatives[0]);
    CHECK(w.derivatives[0] == w.assignment[1] * w.assignment[1]);
  }
  SUBCASE("uncertain rates refute the BDE with k1 != k2") {
    auto s = cascade("k1 = 1, k2 = 1");
    std::vector<std::string> free = {"k1", "k2"};
    auto c = check_uncertain(session, s, observe_x1, Equivalence::backward, free);
    REQUIRE(c.verdict == Verdict::counterexample);
    REQUIRE(c.witness->parameters.size() == 2);
    CHECK(c.witness->parameters[0].first == "k1");
    CHECK(c.witness->parameters[0].second != c.witness->parameters[1].second);
    CHECK(check_uncertain(session, s, observe_x1, Equivalence::forward, free).verdict == Verdict::valid);
    // No listed parameters: same verdict as a plain check.
    CHECK(check_uncertain(session, s, observe_x1, Equivalence::backward, {}).verdict == Verdict::valid);
  }
  CHECK(session.query_count() >= 1);
}

TEST_CASE("largest_bde_smt on the cascade" * doctest::skip(no_solver)) {
  auto session = make_session();
  auto r = largest_bde_smt(session, cascade("k1 = 1, k2 = 1"), Partition::trivial(3));
  CHECK(r.conclusive);
  CHECK(r.partition == observe_x1);
  CHECK(r.solver_calls <= 2);
  REQUIRE(r.witnesses.size() == 1);
  auto r2 = largest_bde_smt(session, cascade("k1 = 1, k2 = 2"), Partition::trivial(3));
  CHECK(r2.partition == Partition::discrete(3));
  auto r3 = largest_bde_smt(session, cascade("k1 = 1, k2 = 2"), Partition::discrete(3));
  CHECK(r3.solver_calls == 1);
  CHECK(r3.partition == Partition::discrete(3));
}

TEST_CASE("forward check catches what FB misses" * doctest::skip(no_solver)) {
  auto s = ingest::parse_ode(
      "var x1, x2, x3; d(x1) = -x1 + x2^2 + 2*x2*x3 + x3^2; d(x2) = -x2; d(x3) = -x3;");
  CHECK_FALSE(syntactic::check_fb(s, observe_x1).valid());
  auto session = make_session();
  CHECK(check_partition(session, s, observe_x1, Equivalence::forward).verdict == Verdict::valid);
}

TEST_CASE("time limit gives a timeout, and the session recovers" * doctest::skip(no_solver)) {
  // A dense quadratic system large enough that 1 ms cannot cover the query.
  PolynomialODESystem s;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coeff(-3, 3);
  const std::uint32_t n = 60;
  for (std::uint32_t i = 0; i < n; ++i) {
    s.variables.push_back("v" + std::to_string(i));
    Polynomial f;
    for (std::uint32_t k = 0; k < n; ++k) {
      f.add_term(Monomial({{k, 1}, {(k + i) % n, 1}}), Coefficient(static_cast<long>(coeff(rng))));
    }
    s.derivatives.push_back(f);
  }
  auto session = make_session(std::chrono::milliseconds(1));
  auto c = check_partition(session, s, Partition::trivial(n), Equivalence::forward);
  CHECK(c.verdict == Verdict::unknown);
  CHECK(c.reason.find("time limit") != std::string::npos);

  auto fresh = make_session();
  CHECK(check_partition(fresh, cascade("k1 = 1, k2 = 1"), observe_x1, Equivalence::backward).verdict ==
        Verdict::valid);
}

TEST_CASE("irrational models are pinned to rationals") {
  SolverConfig c;
  c.executable = ODELUMP_FIXTURES "/irrational_solver.py";
  SolverSession session(c);
  auto r = check_partition(session, cascade("k1 = 1, k2 = 1"), Partition::trivial(3), Equivalence::backward);
  REQUIRE(r.verdict == Verdict::counterexample);
  CHECK(r.witness->pinned);
  // Pinning to 0 is refuted by the stand-in solver; 1 is the next candidate.
  CHECK(r.witness->assignment == std::vector<Rational>{Rational(1), Rational(1), Rational(1)});
  CHECK(r.solver_calls == 3);
  CHECK(split_by_witness(Partition::trivial(3), *r.witness) == observe_x1);
}

TEST_CASE("queries can be dumped" * doctest::skip(no_solver)) {
  auto dir = std::filesystem::temp_directory_path() / "odelump_dump_test";
  std::filesystem::remove_all(dir);
  SolverConfig c;
  c.executable = solver_path;
  c.dump_dir = dir;
  SolverSession session(c);
  largest_bde_smt(session, cascade("k1 = 1, k2 = 1"), Partition::trivial(3));
  CHECK(std::filesystem::exists(dir / "query_0001.smt2"));
  CHECK(std::filesystem::exists(dir / "query_0002.smt2"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("solver agrees with the syntactic engine on random systems" * doctest::skip(no_solver)) {
  auto session = make_session(std::chrono::milliseconds(20'000));
  std::size_t unknown = 0;
  std::size_t runs = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto inst = testing::random_instance(seed);
    CAPTURE(seed);
    ++runs;
    auto r = largest_bde_smt(session, inst.system, inst.initial);
    if (!r.conclusive) {
      ++unknown;
      continue;
    }
    CHECK(r.partition == syntactic::refine_bde(inst.system, inst.initial));
    // Candidate partitions: the planted one and the initial one.
    for (const Partition* p : {&inst.planted, &inst.initial}) {
      auto c = check_partition(session, inst.system, *p, Equivalence::backward);
      if (c.verdict == Verdict::unknown) continue;
      CHECK((c.verdict == Verdict::valid) == syntactic::check_bde(inst.system, *p).valid());
    }
  }
  MESSAGE("unknown runs: " << unknown << " of " << runs);
  CHECK(unknown * 20 < runs);
}
