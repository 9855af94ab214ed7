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
#include <string_view>
#include <vector>

#include "odelump/errors.hpp"

namespace odelump::smt {

class SolverError : public Error {
 public:
  using Error::Error;
};

/// An atom or a list. Quoted symbols are stored without their bars and
/// string literals without their quotes; `quoted` records which.
struct SExpr {
  enum class Kind { atom, string, list };
  Kind kind = Kind::atom;
  std::string text;
  std::vector<SExpr> items;

  bool is_atom(std::string_view s) const { return kind == Kind::atom && text == s; }
  bool is_list() const { return kind == Kind::list; }
  /// Head symbol of a non-empty list, or empty.
  std::string_view head() const;
  std::string to_string() const;
};

/// Incremental reader for solver output that may arrive in pieces.
class SExprReader {
 public:
  void feed(std::string_view bytes) { buffer_.append(bytes); }
  /// Next complete expression, or nullopt when more input is needed.
  /// Throws SolverError on malformed input.
  std::optional<SExpr> next();
  bool has_pending() const;
  void clear() { buffer_.clear(); }

 private:
  std::string buffer_;
};

/// All expressions in `text`; throws SolverError if anything is incomplete.
std::vector<SExpr> parse_sexprs(std::string_view text);

}  // namespace odelump::smt
