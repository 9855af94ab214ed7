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
#include <functional>
#include <vector>

#include "odelump/model.hpp"
#include "odelump/partition.hpp"

namespace odelump::testing {

enum class OracleMode { bde, fb };

/// Every set partition of {0..n-1}, as restricted growth strings.
std::vector<Partition> all_partitions(std::size_t n);

/// BDE predicate written straight from the definition: members of a block
/// have equal derivatives once every variable is replaced by its block's
/// representative.
bool is_bde(const PolynomialODESystem& system, const Partition& part);

/// FB predicate evaluated on the block-sum polynomials: linear coefficients
/// constant per source block, quadratic coefficients constant per block
/// pair, no quadratic mass inside a non-singleton block.
bool is_fb(const PolynomialODESystem& system, const Partition& part);

/// Coarsest partition refining `initial` that satisfies the predicate, by
/// exhaustive enumeration. Throws for n > 8 or when the coarsest element is
/// not unique.
Partition oracle_coarsest(const PolynomialODESystem& system, OracleMode mode, const Partition& initial);

}  // namespace odelump::testing
