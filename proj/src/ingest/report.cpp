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

#include "odelump/ingest/report.hpp"

namespace odelump::ingest {

nlohmann::json to_json(const RunReport& report) {
  nlohmann::json j;
  j["command"] = report.command;
  j["model"] = report.model;
  j["mode"] = report.mode;
  j["backend"] = report.backend;
  j["n"] = report.n;
  j["m"] = report.m;
  j["degree"] = report.degree;
  j["blocks_initial"] = report.blocks_initial;
  j["blocks_final"] = report.blocks_final;
  j["partition"] = report.partition;
  j["verdict"] = report.verdict;
  j["solver_calls"] = report.solver_calls ? nlohmann::json(*report.solver_calls) : nlohmann::json(nullptr);
  j["wall_time_ms"] = report.wall_time_ms;
  j["details"] = report.details;
  return j;
}

std::string print_report(const RunReport& report) { return to_json(report).dump(2) + "\n"; }

}  // namespace odelump::ingest
