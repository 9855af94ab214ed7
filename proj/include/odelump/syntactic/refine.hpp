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
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "odelump/model.hpp"
#include "odelump/partition.hpp"
#include "odelump/polynomial.hpp"

namespace odelump::syntactic {

/// Coarsest partition refining `initial` in which related variables have
/// equal collapsed derivatives. Works for any degree and keeps free
/// parameters symbolic.
Partition refine_bde(const PolynomialODESystem& system, const Partition& initial);

/// Coarsest forward-bisimulation partition refining `initial`. Requires
/// degree <= 2 and every coefficient rational or a rational multiple of a
/// single parameter; throws UnsupportedError otherwise.
Partition refine_fb(const PolynomialODESystem& system, const Partition& initial);

/// Column sums of a degree <= 2 system into the blocks of a partition.
///
/// linear(B', k) = sum over i in B' of coeff(f_i, x_k) and
/// quadratic(B', k, l) = sum over i in B' of coeff(f_i, x_k*x_l), with the
/// diagonal holding the coefficient of x_k^2.
class FbCoefficientView {
 public:
  static constexpr std::uint32_t linear_column = std::numeric_limits<std::uint32_t>::max();

  struct Entry {
    std::size_t target;   // B'
    std::uint32_t column;  // l, or linear_column for A[B', k]
    Coefficient value;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  FbCoefficientView(const PolynomialODESystem& system, const Partition& part);

  Coefficient linear(std::size_t target, std::size_t k) const;
  Coefficient quadratic(std::size_t target, std::size_t k, std::size_t l) const;
  Coefficient constant(std::size_t target) const { return constants_[target]; }

  /// Non-zero entries of variable k's row, sorted by (target, column).
  const std::vector<Entry>& row(std::size_t k) const { return rows_[k]; }

 private:
  std::vector<std::vector<Entry>> rows_;
  std::vector<Coefficient> constants_;
};

struct Violation {
  std::size_t first = 0;   // the block representative
  std::size_t second = 0;  // the member that disagrees with it
  /// Target block for FB; for BDE the block of the pair.
  std::size_t block = 0;
  /// Collapsed monomial (BDE) or column variable (FB) where the two sides differ.
  Monomial monomial;
  Coefficient left;
  Coefficient right;
  std::string description;
};

struct CheckResult {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  explicit operator bool() const { return valid(); }
};

/// Valid iff every block member has the representative's collapsed derivative.
CheckResult check_bde(const PolynomialODESystem& system, const Partition& part);

/// Valid iff `part` satisfies the forward-bisimulation coefficient condition.
/// Throws UnsupportedError for degree > 2.
CheckResult check_fb(const PolynomialODESystem& system, const Partition& part);

}  // namespace odelump::syntactic
