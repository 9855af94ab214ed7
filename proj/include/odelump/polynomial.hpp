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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "odelump/rational.hpp"

namespace odelump {

/// Product of powers of indexed symbols, kept sorted by index with no zero
/// exponents. The empty monomial is the constant 1. The same type is used for
/// monomials over ODE variables and over parameters.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;  // (index, exponent)

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors);

  static Monomial symbol(std::uint32_t index, std::uint32_t exponent = 1);

  std::span<const Factor> factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  bool is_constant() const { return factors_.empty(); }
  std::uint32_t exponent(std::uint32_t index) const;

  Monomial operator*(const Monomial& other) const;

  /// Applies `map` to every index and re-canonicalises (merging collisions).
  Monomial renamed(const std::function<std::uint32_t(std::uint32_t)>& map) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::size_t hash() const;

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

/// Graded-lexicographic order, greatest first: higher total degree precedes,
/// ties broken lexicographically with index 0 as the largest symbol.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b);

/// A coefficient: polynomial over parameter indices with rational coefficients.
/// A plain number is the constant polynomial.
class Coefficient {
 public:
  using Terms = std::map<Monomial, Rational, GrlexGreater>;

  Coefficient() = default;
  Coefficient(const Rational& value);  // NOLINT(google-explicit-constructor)
  Coefficient(long value) : Coefficient(Rational(value)) {}  // NOLINT

  static Coefficient parameter(std::uint32_t index);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Value of a rational coefficient; 0 for zero. Requires is_rational().
  Rational rational_value() const;
  std::uint32_t parameter_degree() const;

  Coefficient& operator+=(const Coefficient& other);
  Coefficient& operator-=(const Coefficient& other);
  Coefficient& operator*=(const Rational& factor);
  Coefficient operator*(const Coefficient& other) const;
  Coefficient operator-() const;
  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }

  friend bool operator==(const Coefficient& a, const Coefficient& b) { return a.terms_ == b.terms_; }
  friend std::strong_ordering operator<=>(const Coefficient& a, const Coefficient& b);

  /// Replaces parameters that have a value; unbound ones stay symbolic.
  Coefficient substituted(std::span<const std::optional<Rational>> values) const;
  Coefficient renamed(const std::function<std::uint32_t(std::uint32_t)>& map) const;
  Rational evaluate(std::span<const Rational> parameters) const;

  std::size_t hash() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

/// Canonical sparse polynomial over variable indices with Coefficient values.
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Coefficient, GrlexGreater>;

  Polynomial() = default;
  static Polynomial constant(const Coefficient& c);
  static Polynomial variable(std::uint32_t index);
  static Polynomial term(const Monomial& m, const Coefficient& c);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  std::uint32_t degree() const;
  /// Coefficient of `m`, zero when absent.
  Coefficient coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Coefficient& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial pow(std::uint32_t exponent) const;
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Maps every variable index through `map`, merging and cancelling terms.
  Polynomial renamed(const std::function<std::uint32_t(std::uint32_t)>& map) const;
  Polynomial with_parameters(std::span<const std::optional<Rational>> values) const;
  Polynomial with_parameters_renamed(const std::function<std::uint32_t(std::uint32_t)>& map) const;
  /// Substitutes each variable by a polynomial (composition).
  Polynomial composed(std::span<const Polynomial> replacement) const;

  Rational evaluate(std::span<const Rational> variables, std::span<const Rational> parameters) const;

  bool mentions_parameters() const;

  std::size_t hash() const;

 private:
  Terms terms_;
};

}  // namespace odelump
