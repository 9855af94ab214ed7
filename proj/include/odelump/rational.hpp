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

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace odelump {

using Rational = mpq_class;

/// Exact conversion of an integer, `a/b` fraction, or decimal literal with an
/// optional exponent (`0.5`, `-1.25e-3`). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical text form: `3`, `-1/2`.
std::string to_string(const Rational& value);

std::size_t hash_value(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace odelump
