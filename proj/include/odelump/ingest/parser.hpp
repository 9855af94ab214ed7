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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "odelump/errors.hpp"
#include "odelump/model.hpp"
#include "odelump/partition.hpp"

namespace odelump::ingest {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Either kind of model file; the kind is inferred from the statements used.
using ModelDocument = std::variant<PolynomialODESystem, ReactionNetwork>;

ModelDocument parse_model(std::string_view text);

/// `param k1 = 1; var x1, x2; init x1 = 1; d(x1) = -k1*x1 + x2^2;`
PolynomialODESystem parse_ode(std::string_view text);

/// `species A, B; A + B -> 2 C @ 1.5; 0 -> A @ k;`
ReactionNetwork parse_rn(std::string_view text);

enum class UnlistedPolicy { shared_block, singletons };

struct PartitionDocument {
  std::vector<std::vector<std::string>> blocks;
  UnlistedPolicy unlisted = UnlistedPolicy::shared_block;

  friend bool operator==(const PartitionDocument&, const PartitionDocument&) = default;
};

/// `{x1} {x2, x3}` with an optional `unlisted = singleton;` or
/// `unlisted = shared;` statement (shared is the default).
PartitionDocument parse_partition_document(std::string_view text);

Partition resolve_partition(const PartitionDocument& doc, const std::vector<std::string>& names);

inline Partition parse_partition(std::string_view text, const std::vector<std::string>& names) {
  return resolve_partition(parse_partition_document(text), names);
}

}  // namespace odelump::ingest
