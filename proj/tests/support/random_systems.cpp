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

#include "random_systems.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace odelump::testing {

namespace {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Rational small_coefficient(Rng& rng) {
  static const Rational choices[] = {Rational(-1), Rational(-1, 2), Rational(1, 2), Rational(1), Rational(2)};
  return choices[uniform(rng, 0, 4)];
}

Monomial random_monomial(Rng& rng, std::size_t n) {
  std::vector<Monomial::Factor> f;
  std::size_t degree = uniform(rng, 0, 2);
  for (std::size_t d = 0; d < degree; ++d) f.emplace_back(static_cast<std::uint32_t>(uniform(rng, 0, n - 1)), 1);
  return Monomial(std::move(f));
}

/// Labels with every value in [0, q) used at least once.
std::vector<std::size_t> random_labels(Rng& rng, std::size_t n, std::size_t q) {
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i < q ? i : uniform(rng, 0, q - 1);
  std::shuffle(labels.begin(), labels.end(), rng);
  return labels;
}

Polynomial decay(std::size_t i) {
  return Polynomial::term(Monomial::symbol(static_cast<std::uint32_t>(i)), Coefficient(-6L));
}

/// Quotient g over q macro-variables, lifted by choosing for each variable
/// an arbitrary member of every block a term mentions.
PolynomialODESystem lift(Rng& rng, std::size_t n, const Partition& planted) {
  std::size_t q = planted.block_count();
  std::vector<std::vector<std::pair<Monomial, Rational>>> g(q);
  for (auto& terms : g) {
    for (std::size_t t = uniform(rng, 0, 3); t > 0; --t) terms.emplace_back(random_monomial(rng, q), small_coefficient(rng));
  }
  PolynomialODESystem s;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial f = decay(i);
    for (const auto& [m, c] : g[planted.block_of(i)]) {
      std::vector<Monomial::Factor> factors;
      for (const auto& [b, e] : m.factors()) {
        const auto& members = planted.block(b);
        for (std::uint32_t k = 0; k < e; ++k) {
          factors.emplace_back(static_cast<std::uint32_t>(members[uniform(rng, 0, members.size() - 1)]), 1);
        }
      }
      f.add_term(Monomial(std::move(factors)), Coefficient(c));
    }
    s.derivatives.push_back(std::move(f));
  }
  return s;
}

/// f_i(x) = -6 x_i + h_i(x) + h_sigma(i)(sigma x) for an involution sigma,
/// so the orbits of sigma form a BDE and an FDE.
PolynomialODESystem symmetrise(Rng& rng, std::size_t n, Partition& planted) {
  std::vector<std::uint32_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0U);
  std::vector<std::uint32_t> order = sigma;
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t swaps = uniform(rng, 1, n / 2);
  for (std::size_t s = 0; s < swaps; ++s) std::swap(sigma[order[2 * s]], sigma[order[2 * s + 1]]);
  std::vector<Polynomial> h(n);
  for (auto& p : h) {
    for (std::size_t t = uniform(rng, 0, 3); t > 0; --t) p.add_term(random_monomial(rng, n), Coefficient(small_coefficient(rng)));
  }
  PolynomialODESystem s;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial f = decay(i) + h[i] + h[sigma[i]].renamed([&](std::uint32_t v) { return sigma[v]; });
    s.derivatives.push_back(std::move(f));
  }
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::min<std::size_t>(i, sigma[i]);
  planted = Partition::from_labels(labels);
  return s;
}

/// Column sums into every block are the same for all members of a source
/// block: each block-level coefficient is handed to one random member of the
/// target block, independently per source variable.
PolynomialODESystem fb_layout(Rng& rng, std::size_t n, const Partition& planted) {
  std::size_t q = planted.block_count();
  std::vector<Polynomial> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = decay(i);
  auto member = [&](std::size_t block) { return planted.block(block)[uniform(rng, 0, planted.block(block).size() - 1)]; };
  for (std::size_t target = 0; target < q; ++target) {
    for (std::size_t src = 0; src < q; ++src) {
      if (uniform(rng, 0, 2) != 0) continue;
      Rational a = small_coefficient(rng);
      for (std::size_t k : planted.block(src)) {
        f[member(target)].add_term(Monomial::symbol(static_cast<std::uint32_t>(k)), Coefficient(a));
      }
    }
    for (std::size_t b = 0; b < q; ++b) {
      for (std::size_t c = b; c < q; ++c) {
        if (uniform(rng, 0, 3) != 0) continue;
        if (b == c && planted.block(b).size() > 1) continue;
        Rational a = small_coefficient(rng);
        for (std::size_t k : planted.block(b)) {
          for (std::size_t l : planted.block(c)) {
            f[member(target)].add_term(
                Monomial({{static_cast<std::uint32_t>(k), 1}, {static_cast<std::uint32_t>(l), 1}}), Coefficient(a));
          }
        }
      }
    }
  }
  PolynomialODESystem s;
  s.derivatives = std::move(f);
  return s;
}

}  // namespace

RandomInstance random_instance(std::uint64_t seed, std::size_t max_n) {
  Rng rng(seed);
  std::size_t n = uniform(rng, 2, max_n);
  RandomInstance out;
  std::size_t kind = uniform(rng, 0, 2);
  if (kind == 0) {
    out.planted = Partition::from_labels(random_labels(rng, n, uniform(rng, 1, n)));
    out.system = lift(rng, n, out.planted);
    out.kind = "lift";
  } else if (kind == 1) {
    out.system = symmetrise(rng, n, out.planted);
    out.kind = "symmetric";
  } else {
    out.planted = Partition::from_labels(random_labels(rng, n, uniform(rng, 1, n)));
    out.system = fb_layout(rng, n, out.planted);
    out.kind = "fb";
  }
  out.system.name = "random_" + std::to_string(seed);
  for (std::size_t i = 0; i < n; ++i) {
    out.system.variables.push_back("x" + std::to_string(i + 1));
    Rational x0(static_cast<long>(uniform(rng, 1, 5)), 10);
    x0.canonicalize();
    out.system.initial.push_back(x0);
  }
  switch (uniform(rng, 0, 2)) {
    case 0:
      out.initial = Partition::trivial(n);
      break;
    case 1:
      out.initial = Partition::from_labels(random_labels(rng, n, std::min<std::size_t>(n, 2)));
      break;
    default: {
      std::vector<std::size_t> labels(n, 1);
      labels[uniform(rng, 0, n - 1)] = 0;
      out.initial = Partition::from_labels(labels);
    }
  }
  return out;
}

}  // namespace odelump::testing
