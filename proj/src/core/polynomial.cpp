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

#include "odelump/polynomial.hpp"

#include <algorithm>

#include "odelump/errors.hpp"

namespace odelump {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
  std::size_t out = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (out > 0 && factors_[out - 1].first == factors_[i].first) {
      factors_[out - 1].second += factors_[i].second;
    } else {
      factors_[out++] = factors_[i];
    }
  }
  factors_.resize(out);
  std::erase_if(factors_, [](const Factor& f) { return f.second == 0; });
  for (const auto& f : factors_) degree_ += f.second;
}

Monomial Monomial::symbol(std::uint32_t index, std::uint32_t exponent) {
  if (exponent == 0) return {};
  return Monomial({{index, exponent}});
}

std::uint32_t Monomial::exponent(std::uint32_t index) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{index, 0});
  return (it != factors_.end() && it->first == index) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial result;
  result.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      result.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      result.factors_.push_back(*b++);
    } else {
      result.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  result.degree_ = degree_ + other.degree_;
  return result;
}

Monomial Monomial::renamed(const std::function<std::uint32_t(std::uint32_t)>& map) const {
  std::vector<Factor> mapped;
  mapped.reserve(factors_.size());
  for (const auto& [index, exp] : factors_) mapped.emplace_back(map(index), exp);
  return Monomial(std::move(mapped));
}

std::size_t Monomial::hash() const {
  std::size_t h = factors_.size();
  for (const auto& [index, exp] : factors_) h = mix(mix(h, index), exp);
  return h;
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    if (fa[i].first != fb[i].first) {
      // The monomial carrying the smaller index is lexicographically larger.
      return fa[i].first < fb[i].first ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (fa[i].second != fb[i].second) return fa[i].second <=> fb[i].second;
  }
  return fa.size() <=> fb.size();
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  return grlex_compare(a, b) == std::strong_ordering::greater;
}

// ------------------------------------------------------------- Coefficient

Coefficient::Coefficient(const Rational& value) {
  if (value != 0) terms_.emplace(Monomial{}, value);
}

Coefficient Coefficient::parameter(std::uint32_t index) {
  Coefficient c;
  c.terms_.emplace(Monomial::symbol(index), Rational(1));
  return c;
}

bool Coefficient::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
}

Rational Coefficient::rational_value() const {
  if (!is_rational()) throw ModelError("coefficient is not a plain number");
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

std::uint32_t Coefficient::parameter_degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void Coefficient::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Coefficient& Coefficient::operator+=(const Coefficient& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Coefficient& Coefficient::operator*=(const Rational& factor) {
  if (factor == 0) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= factor;
  }
  return *this;
}

Coefficient Coefficient::operator*(const Coefficient& other) const {
  Coefficient result;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) result.add_term(ma * mb, ca * cb);
  }
  return result;
}

Coefficient Coefficient::operator-() const {
  Coefficient result = *this;
  for (auto& [m, c] : result.terms_) c = -c;
  return result;
}

std::strong_ordering operator<=>(const Coefficient& a, const Coefficient& b) {
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (auto c = grlex_compare(ia->first, ib->first); c != 0) return c;
    int cmp = ::cmp(ia->second, ib->second);
    if (cmp != 0) return cmp < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

Coefficient Coefficient::substituted(std::span<const std::optional<Rational>> values) const {
  Coefficient result;
  for (const auto& [m, c] : terms_) {
    Rational factor = c;
    std::vector<Monomial::Factor> remaining;
    for (const auto& [index, exp] : m.factors()) {
      if (index < values.size() && values[index]) {
        Rational p;
        mpz_pow_ui(p.get_num_mpz_t(), values[index]->get_num_mpz_t(), exp);
        mpz_pow_ui(p.get_den_mpz_t(), values[index]->get_den_mpz_t(), exp);
        factor *= p;
      } else {
        remaining.emplace_back(index, exp);
      }
    }
    result.add_term(Monomial(std::move(remaining)), factor);
  }
  return result;
}

Coefficient Coefficient::renamed(const std::function<std::uint32_t(std::uint32_t)>& map) const {
  Coefficient result;
  for (const auto& [m, c] : terms_) result.add_term(m.renamed(map), c);
  return result;
}

Rational Coefficient::evaluate(std::span<const Rational> parameters) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational product = c;
    for (const auto& [index, exp] : m.factors()) {
      if (index >= parameters.size()) throw ModelError("parameter index out of range");
      for (std::uint32_t e = 0; e < exp; ++e) product *= parameters[index];
    }
    sum += product;
  }
  return sum;
}

std::size_t Coefficient::hash() const {
  std::size_t h = terms_.size();
  for (const auto& [m, c] : terms_) h = mix(mix(h, m.hash()), hash_value(c));
  return h;
}

// -------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(const Coefficient& c) { return term(Monomial{}, c); }

std::size_t Polynomial::hash() const {
  std::size_t h = terms_.size();
  for (const auto& [m, c] : terms_) h = mix(mix(h, m.hash()), c.hash());
  return h;
}

Polynomial Polynomial::variable(std::uint32_t index) {
  return term(Monomial::symbol(index), Coefficient(1));
}

Polynomial Polynomial::term(const Monomial& m, const Coefficient& c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

std::uint32_t Polynomial::degree() const {
  // Terms are ordered by descending degree.
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

Coefficient Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Coefficient{} : it->second;
}

void Polynomial::add_term(const Monomial& m, const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial result;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) result.add_term(ma * mb, ca * cb);
  }
  return result;
}

Polynomial Polynomial::operator-() const {
  Polynomial result;
  for (const auto& [m, c] : terms_) result.terms_.emplace(m, -c);
  return result;
}

Polynomial Polynomial::pow(std::uint32_t exponent) const {
  Polynomial result = constant(Coefficient(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::renamed(const std::function<std::uint32_t(std::uint32_t)>& map) const {
  Polynomial result;
  for (const auto& [m, c] : terms_) result.add_term(m.renamed(map), c);
  return result;
}

Polynomial Polynomial::with_parameters(std::span<const std::optional<Rational>> values) const {
  Polynomial result;
  for (const auto& [m, c] : terms_) result.add_term(m, c.substituted(values));
  return result;
}

Polynomial Polynomial::with_parameters_renamed(
    const std::function<std::uint32_t(std::uint32_t)>& map) const {
  Polynomial result;
  for (const auto& [m, c] : terms_) result.add_term(m, c.renamed(map));
  return result;
}

Polynomial Polynomial::composed(std::span<const Polynomial> replacement) const {
  Polynomial result;
  for (const auto& [m, c] : terms_) {
    Polynomial product = constant(c);
    for (const auto& [index, exp] : m.factors()) {
      if (index >= replacement.size()) throw ModelError("variable index out of range in composition");
      product = product * replacement[index].pow(exp);
    }
    result += product;
  }
  return result;
}

Rational Polynomial::evaluate(std::span<const Rational> variables,
                              std::span<const Rational> parameters) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational product = c.evaluate(parameters);
    if (product == 0) continue;
    for (const auto& [index, exp] : m.factors()) {
      if (index >= variables.size()) throw ModelError("variable index out of range");
      for (std::uint32_t e = 0; e < exp; ++e) product *= variables[index];
    }
    sum += product;
  }
  return sum;
}

bool Polynomial::mentions_parameters() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return !t.second.is_rational(); });
}

}  // namespace odelump
