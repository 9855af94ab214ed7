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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace odelump::ingest {

/// Machine-readable summary of one CLI run. Everything except the
/// `wall_time_ms` fields is a deterministic function of the inputs.
struct RunReport {
  std::string command;
  std::string model;
  std::string mode;
  std::string backend;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint32_t degree = 0;
  std::size_t blocks_initial = 0;
  std::size_t blocks_final = 0;
  std::vector<std::vector<std::string>> partition;
  std::string verdict;
  std::optional<std::size_t> solver_calls;
  double wall_time_ms = 0.0;
  /// Counterexamples, validation summary and other per-command data.
  nlohmann::json details = nlohmann::json::object();
};

nlohmann::json to_json(const RunReport& report);

/// Pretty-printed JSON with sorted keys and a trailing newline.
std::string print_report(const RunReport& report);

}  // namespace odelump::ingest
