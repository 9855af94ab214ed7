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

#include "odelump/smt/session.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace odelump::smt {

namespace {

constexpr const char* sync_marker = "odelump-sync";

struct Timeout {};

bool is_executable(const std::filesystem::path& p) {
  std::error_code ec;
  return std::filesystem::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
}

std::optional<Rational> parse_numeral(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<std::string> default_arguments(const std::string& executable) {
  std::string base = std::filesystem::path(executable).filename().string();
  if (base.find("z3") != std::string::npos) return {"-in"};
  if (base.find("cvc5") != std::string::npos || base.find("cvc4") != std::string::npos) {
    return {"--lang=smt2", "--incremental"};
  }
  return {};
}

std::optional<std::string> find_solver() {
  const char* path = std::getenv("PATH");
  if (path == nullptr) return std::nullopt;
  for (const char* name : {"z3", "cvc5"}) {
    std::stringstream dirs(path);
    std::string dir;
    while (std::getline(dirs, dir, ':')) {
      if (dir.empty()) continue;
      auto candidate = std::filesystem::path(dir) / name;
      if (is_executable(candidate)) return candidate.string();
    }
  }
  return std::nullopt;
}

std::string_view to_string(SatStatus s) {
  switch (s) {
    case SatStatus::sat:
      return "sat";
    case SatStatus::unsat:
      return "unsat";
    case SatStatus::unknown:
      return "unknown";
    case SatStatus::timeout:
      return "timeout";
  }
  return "unknown";
}

std::optional<Rational> evaluate_real(const SExpr& term) {
  if (term.kind == SExpr::Kind::atom) return parse_numeral(term.text);
  if (!term.is_list() || term.items.size() < 2) return std::nullopt;
  std::string_view op = term.head();
  std::vector<Rational> args;
  for (std::size_t i = 1; i < term.items.size(); ++i) {
    auto v = evaluate_real(term.items[i]);
    if (!v) return std::nullopt;
    args.push_back(*v);
  }
  if (op == "-") {
    if (args.size() == 1) return Rational(-args[0]);
    Rational r = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) r -= args[i];
    return r;
  }
  if (op == "+" || op == "*") {
    Rational r = op == "+" ? Rational(0) : Rational(1);
    for (const auto& a : args) {
      if (op == "+") {
        r += a;
      } else {
        r *= a;
      }
    }
    return r;
  }
  if (op == "/") {
    Rational r = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (args[i] == 0) return std::nullopt;
      r /= args[i];
    }
    return r;
  }
  return std::nullopt;
}

std::map<std::string, ModelValue> parse_model(const SExpr& response) {
  if (!response.is_list()) throw SolverError("unexpected model response: " + response.to_string());
  std::map<std::string, ModelValue> model;
  std::size_t first = response.head() == "model" ? 1 : 0;
  for (std::size_t i = first; i < response.items.size(); ++i) {
    const SExpr& def = response.items[i];
    // (define-fun name () Real value)
    if (def.head() != "define-fun" || def.items.size() != 5) continue;
    const SExpr& params = def.items[2];
    if (!params.is_list() || !params.items.empty()) continue;
    ModelValue v;
    v.text = def.items[4].to_string();
    v.exact = evaluate_real(def.items[4]);
    model[def.items[1].text] = std::move(v);
  }
  return model;
}

SolverSession::SolverSession(SolverConfig config)
    : config_(std::move(config)),
      process_(config_.executable,
               config_.arguments.empty() ? default_arguments(config_.executable) : config_.arguments) {}

void SolverSession::send(const std::vector<std::string>& commands, SolverProcess::Clock::time_point deadline) {
  std::string text;
  for (const auto& c : commands) text += c + '\n';
  text += std::string("(echo \"") + sync_marker + "\")\n";
  if (!process_.write(text, deadline)) throw Timeout{};
  while (true) {
    auto e = process_.read(deadline);
    if (!e) throw Timeout{};
    if ((e->kind == SExpr::Kind::atom || e->kind == SExpr::Kind::string) && e->text == sync_marker) return;
    if (e->head() == "error") throw SolverError("solver error: " + e->to_string());
  }
}

void SolverSession::ensure_started(SolverProcess::Clock::time_point deadline) {
  if (process_.running()) return;
  process_.start();
  send({}, deadline);
}

void SolverSession::dump(const Formula& formula, const std::vector<std::string>& extra) {
  if (!config_.dump_dir) return;
  std::filesystem::create_directories(*config_.dump_dir);
  char name[32];
  std::snprintf(name, sizeof name, "query_%04zu.smt2", queries_);
  std::ofstream out(*config_.dump_dir / name);
  out << "; " << to_string(formula.mode) << " check\n";
  out << "(set-option :produce-models true)\n(set-logic " << formula.logic << ")\n";
  for (const auto& d : formula.declarations()) out << d << '\n';
  out << "(assert " << formula.assertion << ")\n";
  for (const auto& a : extra) out << "(assert " << a << ")\n";
  out << "(check-sat)\n(get-model)\n(exit)\n";
}

QueryResult SolverSession::check(const Formula& formula, const std::vector<std::string>& extra_assertions) {
  ++queries_;
  dump(formula, extra_assertions);
  auto deadline = SolverProcess::Clock::now() + config_.time_limit;
  QueryResult result;
  try {
    ensure_started(deadline);
    // A reset per query rather than push/pop: inside a push scope z3 switches
    // to its incremental core, which stalls on small nonlinear queries that
    // nlsat answers instantly.
    std::vector<std::string> commands = {"(reset)", "(set-option :produce-models true)",
                                         "(set-logic " + formula.logic + ")"};
    for (auto& d : formula.declarations()) commands.push_back(std::move(d));
    commands.push_back("(assert " + formula.assertion + ")");
    for (const auto& a : extra_assertions) commands.push_back("(assert " + a + ")");
    send(commands, deadline);

    if (!process_.write("(check-sat)\n", deadline)) throw Timeout{};
    std::optional<SExpr> answer;
    do {
      answer = process_.read(deadline);
      if (!answer) throw Timeout{};
    } while (answer->is_atom("success"));
    if (answer->is_atom("sat")) {
      result.status = SatStatus::sat;
    } else if (answer->is_atom("unsat")) {
      result.status = SatStatus::unsat;
    } else if (answer->is_atom("unknown")) {
      result.status = SatStatus::unknown;
      result.reason = "solver answered unknown";
    } else {
      throw SolverError("unexpected check-sat response: " + answer->to_string());
    }
    if (result.status == SatStatus::sat) {
      if (!process_.write("(get-model)\n", deadline)) throw Timeout{};
      auto model = process_.read(deadline);
      if (!model) throw Timeout{};
      if (model->head() == "error") throw SolverError("solver error: " + model->to_string());
      result.model = parse_model(*model);
    }
  } catch (const Timeout&) {
    process_.kill();
    result = QueryResult{};
    result.status = SatStatus::timeout;
    result.reason = "time limit of " + std::to_string(config_.time_limit.count()) + " ms exceeded";
  } catch (const SolverError&) {
    process_.kill();
    throw;
  }
  return result;
}

}  // namespace odelump::smt
