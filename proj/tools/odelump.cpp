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

// odelump: exact lumping of polynomial ODEs and reaction networks.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "odelump/driver/bench.hpp"
#include "odelump/driver/pipeline.hpp"
#include "odelump/errors.hpp"
#include "odelump/ingest/parser.hpp"
#include "odelump/ingest/printer.hpp"
#include "odelump/ingest/report.hpp"

using namespace odelump;
using namespace odelump::driver;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open '" + path + "'");
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ModelError("cannot write '" + path + "'");
  out << text;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::size_t> split_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw CLI::ValidationError("expected a list of sizes, got '" + text + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

struct Args {
  std::string model;
  std::string mode = "bde";
  std::string backend = "syntactic";
  std::string partition;
  std::string uncertain;
  std::string solver;
  double time_limit = 60.0;
  bool validate = false;
  double horizon = 10.0;
  double step = 1e-3;
  double tol = 1e-6;
  std::string dump_dir;
  std::string output;
  std::string report;
  std::uint64_t seed = 1;
  // bench / gen
  std::string sizes = "50,100,200";
  std::size_t n = 0;
  std::size_t m = 0;
  double density = 5.0;
  std::string groups = "2,3,5";
  std::string planted;
  std::string backends = "syntactic";
  std::size_t jobs = 1;
};

void add_model_options(CLI::App* cmd, Args& a) {
  cmd->add_option("model", a.model, "model file (.ode or .rn)")->required();
  cmd->add_option("--mode", a.mode, "equivalence")->check(CLI::IsMember({"bde", "fde"}));
  cmd->add_option("--backend", a.backend, "engine")->check(CLI::IsMember({"syntactic", "smt"}));
  cmd->add_option("--partition", a.partition, "initial partition file (.part)");
  cmd->add_option("--uncertain", a.uncertain, "parameters to leave free, comma separated");
  cmd->add_option("--solver", a.solver, "SMT solver executable (default: z3 or cvc5 on PATH)");
  cmd->add_option("--time-limit", a.time_limit, "per-query solver time limit in seconds")->check(CLI::PositiveNumber);
  cmd->add_option("--horizon", a.horizon, "simulation horizon")->check(CLI::NonNegativeNumber);
  cmd->add_option("--step", a.step, "RK4 step")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", a.tol, "validation tolerance (absolute and relative)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--dump-smt2", a.dump_dir, "write every solver query to DIR");
  cmd->add_option("--output", a.output, "quotient model file (default: stdout)");
  cmd->add_option("--report", a.report, "JSON report file");
}

smt::SolverConfig solver_config(const Args& a) {
  smt::SolverConfig c;
  if (!a.solver.empty()) {
    c.executable = a.solver;
  } else if (auto found = smt::find_solver()) {
    c.executable = *found;
  }
  c.time_limit = std::chrono::milliseconds(static_cast<long long>(a.time_limit * 1000.0));
  if (!a.dump_dir.empty()) c.dump_dir = a.dump_dir;
  return c;
}

PipelineOptions pipeline_options(const Args& a) {
  PipelineOptions o;
  o.mode = a.mode == "fde" ? Equivalence::forward : Equivalence::backward;
  o.backend = a.backend == "smt" ? Backend::smt : Backend::syntactic;
  if (!a.partition.empty()) o.partition_text = read_file(a.partition);
  o.uncertain = split_list(a.uncertain);
  o.solver = solver_config(a);
  o.validate = a.validate;
  o.validation = {a.horizon, a.step, a.tol};
  return o;
}

int emit(const PipelineResult& result, const Args& a, bool print_quotient) {
  const auto& r = result.report;
  if (!a.report.empty()) write_file(a.report, ingest::print_report(r));
  if (result.quotient && print_quotient) {
    std::string text = ingest::print_model(result.quotient->reduced);
    if (a.output.empty()) {
      std::cout << text;
    } else {
      write_file(a.output, text);
    }
  }
  std::cerr << r.command << ": " << r.verdict << ", " << r.blocks_final << " block(s) over " << r.n
            << " variable(s)";
  if (r.solver_calls) std::cerr << ", " << *r.solver_calls << " solver call(s)";
  if (r.details.contains("validation")) {
    std::cerr << ", validation " << (r.details["validation"]["passed"].get<bool>() ? "passed" : "FAILED")
              << " (max abs " << r.details["validation"]["max_abs"].get<double>() << ")";
  }
  std::cerr << "\n";
  if (r.details.contains("reason")) std::cerr << "  " << r.details["reason"].get<std::string>() << "\n";
  if (r.details.contains("notes")) {
    for (const auto& n : r.details["notes"]) std::cerr << "  note: " << n.get<std::string>() << "\n";
  }
  if (r.details.contains("violations")) {
    for (const auto& v : r.details["violations"]) std::cerr << "  " << v.get<std::string>() << "\n";
  }
  return result.exit_code;
}

nlohmann::json bench_json(const BenchResult& b) {
  nlohmann::json j;
  j["model"] = b.model;
  j["n"] = b.n;
  j["m"] = b.m;
  j["seed"] = b.spec.seed;
  j["groups"] = b.spec.groups;
  j["planted_blocks"] = b.planted_blocks;
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : b.runs) {
    nlohmann::json x;
    x["backend"] = r.backend;
    x["blocks"] = r.blocks;
    x["matches_planted"] = r.matches_planted;
    x["conclusive"] = r.conclusive;
    x["solver_calls"] = r.solver_calls ? nlohmann::json(*r.solver_calls) : nlohmann::json(nullptr);
    x["wall_time_ms"] = r.wall_time_ms;
    runs.push_back(x);
  }
  j["runs"] = runs;
  return j;
}

int run_bench_command(const Args& a) {
  std::vector<std::size_t> sizes = a.n ? std::vector<std::size_t>{a.n} : split_sizes(a.sizes);
  std::vector<std::size_t> groups = split_sizes(a.groups);
  std::vector<std::string> backends = split_list(a.backends);
  for (const auto& b : backends) {
    if (b != "syntactic" && b != "smt") throw CLI::ValidationError("unknown backend '" + b + "'");
  }
  std::vector<BenchSpec> specs;
  for (std::size_t n : sizes) {
    std::size_t m = a.m ? a.m : static_cast<std::size_t>(a.density * static_cast<double>(n));
    specs.push_back({n, m, groups, a.seed});
  }
  smt::SolverConfig solver = solver_config(a);

  // Independent models run concurrently, each with its own solver process.
  std::vector<BenchResult> results(specs.size());
  std::size_t jobs = std::max<std::size_t>(1, a.jobs);
  for (std::size_t first = 0; first < specs.size(); first += jobs) {
    std::vector<std::future<BenchResult>> pending;
    for (std::size_t i = first; i < std::min(specs.size(), first + jobs); ++i) {
      pending.push_back(std::async(std::launch::async, [&, i] { return run_bench(specs[i], backends, solver); }));
    }
    for (std::size_t k = 0; k < pending.size(); ++k) results[first + k] = pending[k].get();
  }
  std::sort(results.begin(), results.end(), [](const auto& x, const auto& y) { return x.model < y.model; });

  nlohmann::json report;
  report["command"] = "bench";
  report["models"] = nlohmann::json::array();
  int code = exit_ok;
  for (const auto& b : results) {
    report["models"].push_back(bench_json(b));
    std::cerr << b.model << " (n=" << b.n << ", m=" << b.m << ")";
    for (const auto& r : b.runs) {
      std::cerr << "  " << r.backend << ": " << r.wall_time_ms << " ms, " << r.blocks << " blocks"
                << (r.matches_planted ? "" : " (MISMATCH)");
      if (!r.conclusive) code = std::max<int>(code, exit_unknown);
      else if (!r.matches_planted) code = exit_invalid_partition;
    }
    std::cerr << "\n";
  }
  std::string text = report.dump(2) + "\n";
  if (a.report.empty()) {
    std::cout << text;
  } else {
    write_file(a.report, text);
  }
  return code;
}

int run_gen_command(const Args& a) {
  if (a.n == 0) throw CLI::ValidationError("gen needs --n");
  std::size_t m = a.m ? a.m : static_cast<std::size_t>(a.density * static_cast<double>(a.n));
  BenchModel b = generate_bench({a.n, m, split_sizes(a.groups), a.seed});
  std::string text = ingest::print_network(b.network);
  if (a.output.empty()) {
    std::cout << text;
  } else {
    write_file(a.output, text);
  }
  if (!a.planted.empty()) write_file(a.planted, ingest::print_partition(b.planted, b.network.species));
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lumping of polynomial ODE systems and reaction networks"};
  app.require_subcommand(1);
  Args a;

  auto* reduce = app.add_subcommand("reduce", "compute the largest equivalence refining the initial partition");
  add_model_options(reduce, a);
  reduce->add_flag("--validate", a.validate, "check the quotient against simulation");

  auto* check = app.add_subcommand("check", "decide whether a partition is an equivalence");
  add_model_options(check, a);
  check->add_flag("--validate", a.validate, "check the quotient against simulation");

  auto* validate = app.add_subcommand("validate", "compare quotient and original trajectories");
  add_model_options(validate, a);

  auto* bench = app.add_subcommand("bench", "time BDE reduction on generated networks");
  bench->add_option("--sizes", a.sizes, "species counts, comma separated");
  bench->add_option("--n", a.n, "single species count (overrides --sizes)");
  bench->add_option("--m", a.m, "target monomial count (default: density * n)");
  bench->add_option("--density", a.density, "monomials per species")->check(CLI::PositiveNumber);
  bench->add_option("--groups", a.groups, "planted group sizes, comma separated");
  bench->add_option("--backend", a.backends, "backends to time: syntactic, smt or both (comma separated)");
  bench->add_option("--seed", a.seed, "generator seed");
  bench->add_option("--jobs", a.jobs, "models reduced concurrently");
  bench->add_option("--solver", a.solver, "SMT solver executable");
  bench->add_option("--time-limit", a.time_limit, "per-query solver time limit in seconds")->check(CLI::PositiveNumber);
  bench->add_option("--dump-smt2", a.dump_dir, "write every solver query to DIR");
  bench->add_option("--report", a.report, "JSON report file (default: stdout)");

  auto* gen = app.add_subcommand("gen", "write a generated reaction network");
  gen->add_option("--n", a.n, "species count")->required();
  gen->add_option("--m", a.m, "target monomial count (default: density * n)");
  gen->add_option("--density", a.density, "monomials per species")->check(CLI::PositiveNumber);
  gen->add_option("--groups", a.groups, "planted group sizes, comma separated");
  gen->add_option("--seed", a.seed, "generator seed");
  gen->add_option("--output", a.output, "network file (default: stdout)");
  gen->add_option("--planted", a.planted, "write the planted partition to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*bench) return run_bench_command(a);
    if (*gen) return run_gen_command(a);
    auto doc = ingest::parse_model(read_file(a.model));
    PipelineOptions o = pipeline_options(a);
    if (*reduce) return emit(run_reduce(doc, o), a, true);
    if (*check) return emit(run_check(doc, o), a, true);
    return emit(run_validate(doc, o), a, !a.output.empty());
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation_failed;
  } catch (const smt::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return exit_unknown;
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (a.backend == "syntactic") std::cerr << "  hint: --backend smt handles any polynomial degree\n";
    return exit_usage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
}
