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

#include <optional>
#include <string>
#include <vector>

#include "odelump/driver/simulate.hpp"
#include "odelump/ingest/parser.hpp"
#include "odelump/ingest/report.hpp"
#include "odelump/quotient.hpp"
#include "odelump/smt/session.hpp"

namespace odelump::driver {

enum class Backend { syntactic, smt };

std::string_view to_string(Backend b);

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_invalid_partition = 2,
  exit_unknown = 3,
  exit_validation_failed = 4,
};

struct PipelineOptions {
  Equivalence mode = Equivalence::backward;
  Backend backend = Backend::syntactic;
  /// Partition file contents; empty means the trivial partition.
  std::optional<std::string> partition_text;
  /// Parameters left free (checked for all values).
  std::vector<std::string> uncertain;
  smt::SolverConfig solver;
  bool validate = false;
  ValidationOptions validation;
};

struct PipelineResult {
  std::optional<QuotientModel> quotient;
  ingest::RunReport report;
  int exit_code = exit_ok;
};

/// Turns a parsed document into an instantiated system: reaction networks
/// go through mass action, bound parameters are substituted, and the
/// `uncertain` ones stay free.
PolynomialODESystem prepare_system(const ingest::ModelDocument& doc, const std::vector<std::string>& uncertain);

/// Largest reduction for the mode and backend.
PipelineResult run_reduce(const ingest::ModelDocument& doc, const PipelineOptions& options);

/// Decides whether the given partition (default trivial) is an equivalence.
PipelineResult run_check(const ingest::ModelDocument& doc, const PipelineOptions& options);

/// Builds the quotient for the given partition and compares trajectories.
PipelineResult run_validate(const ingest::ModelDocument& doc, const PipelineOptions& options);

/// Report JSON with every `wall_time*` key removed, for comparing runs.
nlohmann::json without_wall_times(const nlohmann::json& report);

}  // namespace odelump::driver
