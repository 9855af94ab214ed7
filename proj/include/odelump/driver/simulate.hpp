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
#include <optional>
#include <string>
#include <vector>

#include "odelump/errors.hpp"
#include "odelump/model.hpp"
#include "odelump/partition.hpp"
#include "odelump/quotient.hpp"

namespace odelump::driver {

class DivergenceError : public Error {
 public:
  DivergenceError(double time, const std::string& variable);
  double time() const { return time_; }

 private:
  double time_;
};

struct Trajectory {
  std::vector<double> times;
  /// series[i][t] is variable i at times[t].
  std::vector<std::vector<double>> series;
};

/// Classic fixed-step RK4 from t = 0 to `horizon`. The system must have no
/// free parameters. The last step is shortened to land on `horizon`.
Trajectory simulate(const PolynomialODESystem& system, const std::vector<double>& initial, double horizon,
                    double step);

/// Initial values as doubles; throws ModelError naming the first missing one.
std::vector<double> initial_values(const PolynomialODESystem& system);

struct ValidationOptions {
  double horizon = 10.0;
  double step = 1e-3;
  double tolerance = 1e-6;
};

struct BlockDeviation {
  std::size_t block = 0;
  double max_abs = 0.0;
  /// max_abs divided by the peak magnitude of the reference series.
  double max_rel = 0.0;
};

struct ValidationReport {
  Equivalence mode = Equivalence::backward;
  ValidationOptions options;
  std::vector<BlockDeviation> blocks;
  double max_abs = 0.0;
  double max_rel = 0.0;
  bool passed = false;
};

/// Forward: y_B(t) against the sum of block B in the original. Backward:
/// every member against its representative, and each quotient variable
/// against its representative. Requires complete initial values (blockwise
/// equal for backward) and bound parameters.
ValidationReport validate_reduction(const PolynomialODESystem& original, const QuotientModel& quotient,
                                    const Partition& part, const ValidationOptions& options = {});

/// Copy of `system` whose members take their representative's initial value.
PolynomialODESystem equalise_initials(const PolynomialODESystem& system, const Partition& part);

}  // namespace odelump::driver
