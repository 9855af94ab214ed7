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

#include <span>
#include <string>

#include "odelump/ingest/parser.hpp"
#include "odelump/model.hpp"
#include "odelump/partition.hpp"

namespace odelump::ingest {

/// Terms in graded-lexicographic order, every numeric factor written out:
/// `1*x1 - 1*x2`, `(k1 + k2)*x1`, `1/2*x1^2`.
std::string print_polynomial(const Polynomial& poly, std::span<const std::string> variables,
                             std::span<const std::string> parameters);

std::string print_coefficient(const Coefficient& c, std::span<const std::string> parameters);

std::string print_model(const PolynomialODESystem& system);
std::string print_network(const ReactionNetwork& net);
std::string print_document(const ModelDocument& doc);
std::string print_partition(const Partition& part, std::span<const std::string> names);
/// One block per line; unresolved, so unknown names survive.
std::string print_partition_document(const PartitionDocument& doc);

}  // namespace odelump::ingest
