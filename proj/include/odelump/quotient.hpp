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
#include <string_view>
#include <vector>

#include "odelump/model.hpp"
#include "odelump/partition.hpp"
#include "odelump/polynomial.hpp"

namespace odelump {

enum class Equivalence { forward, backward };

std::string_view to_string(Equivalence mode);

/// Reduced system plus the block each macro-variable stands for.
struct QuotientModel {
  PolynomialODESystem reduced;
  std::vector<std::vector<std::size_t>> block_map;
  Equivalence mode = Equivalence::backward;
};

/// Rewrites every variable as its block representative.
Polynomial collapse(const Polynomial& poly, const Partition& part);

/// Sum of the derivatives of the variables in block `block`.
Polynomial block_sum(const PolynomialODESystem& system, const Partition& part, std::size_t block);

/// Keeps the representative's equation per block with every derivative
/// collapsed. Throws QuotientError when initial values differ within a block.
QuotientModel build_bde_quotient(const PolynomialODESystem& system, const Partition& part);

/// Macro-variable y_B = sum of block B. Uses the blockwise-constant
/// coefficient structure of a forward-bisimulation partition; throws
/// QuotientError ("not FB-representable") otherwise and UnsupportedError for
/// degree > 2.
QuotientModel build_fde_quotient(const PolynomialODESystem& system, const Partition& part);

/// FDE quotient for any partition already certified as an FDE (for example by
/// the SMT check): y_B' = (sum over B' of f) evaluated at x_rep(B) = y_B and
/// every other member zero. Exact only when the partition is an FDE.
QuotientModel build_fde_quotient_by_section(const PolynomialODESystem& system, const Partition& part);

}  // namespace odelump
