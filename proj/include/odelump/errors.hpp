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

#include <stdexcept>
#include <string>

namespace odelump {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model violates a structural invariant (unknown index, unbound parameter, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A quotient cannot be built for the given partition.
class QuotientError : public Error {
 public:
  using Error::Error;
};

/// An engine was asked to run outside its input class (degree, parameters).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace odelump
