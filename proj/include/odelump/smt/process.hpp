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

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <sys/types.h>

#include "odelump/smt/sexpr.hpp"

namespace odelump::smt {

/// A child process speaking over pipes. Standard error is discarded.
class SolverProcess {
 public:
  using Clock = std::chrono::steady_clock;

  SolverProcess(std::string executable, std::vector<std::string> arguments);
  ~SolverProcess();
  SolverProcess(const SolverProcess&) = delete;
  SolverProcess& operator=(const SolverProcess&) = delete;

  void start();
  bool running() const { return pid_ > 0; }
  /// SIGKILL and reap; safe to call when not running.
  void kill();

  /// Writes `text`, draining output into the reader meanwhile so a chatty
  /// solver cannot deadlock us. Returns false on deadline.
  bool write(std::string_view text, Clock::time_point deadline);
  /// Next complete s-expression, or nullopt on deadline. Throws SolverError
  /// if the process exits.
  std::optional<SExpr> read(Clock::time_point deadline);

 private:
  bool pump(int timeout_ms);

  std::string executable_;
  std::vector<std::string> arguments_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  SExprReader reader_;
};

}  // namespace odelump::smt
