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

#include "odelump/syntactic/refine.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>
#include <utility>

#include "odelump/errors.hpp"
#include "odelump/ingest/printer.hpp"
#include "odelump/quotient.hpp"

namespace odelump::syntactic {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

void check_sizes(const PolynomialODESystem& system, const Partition& part) {
  if (part.size() != system.size()) {
    throw ModelError("partition covers " + std::to_string(part.size()) + " variables, system has " +
                     std::to_string(system.size()));
  }
}

template <class Sig>
struct Keyed {
  std::size_t block;
  Sig sig;
  friend bool operator==(const Keyed&, const Keyed&) = default;
};

/// Splits every block of `part` by `signature(i)`; blocks of size one are
/// never asked for a signature.
template <class Sig, class Hash, class Fn>
Partition split(const Partition& part, Fn&& signature) {
  struct KeyHash {
    std::size_t operator()(const Keyed<Sig>& k) const { return mix(k.block, Hash{}(k.sig)); }
  };
  std::unordered_map<Keyed<Sig>, std::size_t, KeyHash> ids;
  std::vector<std::size_t> labels(part.size());
  std::size_t next = 0;
  for (std::size_t b = 0; b < part.block_count(); ++b) {
    const auto& members = part.block(b);
    if (members.size() == 1) {
      labels[members.front()] = next++;
      continue;
    }
    ids.clear();
    for (std::size_t i : members) {
      auto [it, inserted] = ids.try_emplace(Keyed<Sig>{b, signature(i)}, next);
      if (inserted) ++next;
      labels[i] = it->second;
    }
  }
  return Partition::from_labels(labels);
}

struct PolynomialHash {
  std::size_t operator()(const Polynomial& p) const { return p.hash(); }
};

Polynomial block_signature(const Polynomial& f, const Partition& part) {
  return f.renamed([&](std::uint32_t v) { return static_cast<std::uint32_t>(part.block_of(v)); });
}

void require_fb_shape(const PolynomialODESystem& system) {
  for (std::size_t i = 0; i < system.size(); ++i) {
    for (const auto& [m, c] : system.derivatives[i].terms()) {
      if (m.degree() > 2) {
        throw UnsupportedError("forward bisimulation needs degree <= 2 (derivative of '" + system.variables[i] +
                               "' has degree " + std::to_string(m.degree()) +
                               "); use the SMT FDE check instead");
      }
      if (c.is_rational()) continue;
      bool scaled_parameter = c.terms().size() == 1 && c.terms().begin()->first.degree() == 1;
      if (!scaled_parameter) {
        throw UnsupportedError("free parameters in forward bisimulation must appear as whole-coefficient factors (derivative of '" +
                               system.variables[i] + "'); use the SMT backend");
      }
    }
  }
}

using FbSignature = std::vector<std::tuple<std::size_t, std::uint32_t, bool, Coefficient>>;

struct FbSignatureHash {
  std::size_t operator()(const FbSignature& s) const {
    std::size_t h = s.size();
    for (const auto& [t, l, diag, c] : s) h = mix(mix(mix(mix(h, t), l), diag), c.hash());
    return h;
  }
};

/// Variable k's row with the diagonal entry marked: merged variables must
/// agree on every entry, which forces equal cross-block coefficients and no
/// quadratic mass inside a non-singleton block.
FbSignature fb_signature(const FbCoefficientView& view, std::size_t k) {
  FbSignature sig;
  sig.reserve(view.row(k).size());
  for (const auto& e : view.row(k)) sig.emplace_back(e.target, e.column, e.column == k, e.value);
  return sig;
}

std::string name_of(const PolynomialODESystem& s, std::size_t i) { return s.variables[i]; }

std::vector<std::string> parameter_names(const PolynomialODESystem& s) {
  std::vector<std::string> names;
  for (const auto& p : s.parameters) names.push_back(p.name);
  return names;
}

}  // namespace

Partition refine_bde(const PolynomialODESystem& system, const Partition& initial) {
  check_sizes(system, initial);
  Partition current = initial;
  while (!current.is_discrete()) {
    Partition next = split<Polynomial, PolynomialHash>(
        current, [&](std::size_t i) { return block_signature(system.derivatives[i], current); });
    if (next.block_count() == current.block_count()) break;
    current = std::move(next);
  }
  return current;
}

Partition refine_fb(const PolynomialODESystem& system, const Partition& initial) {
  check_sizes(system, initial);
  require_fb_shape(system);
  Partition current = initial;
  while (!current.is_discrete()) {
    FbCoefficientView view(system, current);
    Partition next =
        split<FbSignature, FbSignatureHash>(current, [&](std::size_t k) { return fb_signature(view, k); });
    if (next.block_count() == current.block_count()) break;
    current = std::move(next);
  }
  return current;
}

FbCoefficientView::FbCoefficientView(const PolynomialODESystem& system, const Partition& part)
    : rows_(system.size()), constants_(part.block_count()) {
  check_sizes(system, part);
  std::vector<std::vector<Entry>> raw(system.size());
  for (std::size_t i = 0; i < system.size(); ++i) {
    std::size_t target = part.block_of(i);
    for (const auto& [m, c] : system.derivatives[i].terms()) {
      auto f = m.factors();
      switch (m.degree()) {
        case 0:
          constants_[target] += c;
          break;
        case 1:
          raw[f[0].first].push_back({target, linear_column, c});
          break;
        case 2:
          if (f.size() == 1) {
            raw[f[0].first].push_back({target, f[0].first, c});
          } else {
            raw[f[0].first].push_back({target, f[1].first, c});
            raw[f[1].first].push_back({target, f[0].first, c});
          }
          break;
        default:
          throw UnsupportedError("coefficient view needs degree <= 2");
      }
    }
  }
  for (std::size_t k = 0; k < raw.size(); ++k) {
    auto& entries = raw[k];
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return std::tie(a.target, a.column) < std::tie(b.target, b.column);
    });
    auto& row = rows_[k];
    for (auto& e : entries) {
      if (!row.empty() && row.back().target == e.target && row.back().column == e.column) {
        row.back().value += e.value;
        if (row.back().value.is_zero()) row.pop_back();
      } else if (!e.value.is_zero()) {
        row.push_back(std::move(e));
      }
    }
  }
}

namespace {

Coefficient lookup(const std::vector<FbCoefficientView::Entry>& row, std::size_t target, std::uint32_t column) {
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(target, column),
                             [](const FbCoefficientView::Entry& e, const std::pair<std::size_t, std::uint32_t>& key) {
                               return std::tie(e.target, e.column) < std::tie(key.first, key.second);
                             });
  if (it != row.end() && it->target == target && it->column == column) return it->value;
  return Coefficient();
}

}  // namespace

Coefficient FbCoefficientView::linear(std::size_t target, std::size_t k) const {
  return lookup(rows_.at(k), target, linear_column);
}

Coefficient FbCoefficientView::quadratic(std::size_t target, std::size_t k, std::size_t l) const {
  return lookup(rows_.at(k), target, static_cast<std::uint32_t>(l));
}

CheckResult check_bde(const PolynomialODESystem& system, const Partition& part) {
  check_sizes(system, part);
  CheckResult result;
  auto params = parameter_names(system);
  for (std::size_t b = 0; b < part.block_count(); ++b) {
    const auto& members = part.block(b);
    std::size_t rep = members.front();
    Polynomial expected = collapse(system.derivatives[rep], part);
    for (std::size_t idx = 1; idx < members.size(); ++idx) {
      std::size_t i = members[idx];
      Polynomial got = collapse(system.derivatives[i], part);
      if (got == expected) continue;
      Polynomial diff = got - expected;
      const Monomial& m = diff.terms().begin()->first;
      Violation v;
      v.first = rep;
      v.second = i;
      v.block = b;
      v.monomial = m;
      v.left = expected.coefficient(m);
      v.right = got.coefficient(m);
      v.description = name_of(system, rep) + " ~ " + name_of(system, i) + ": collapsed derivatives differ: " +
                      ingest::print_polynomial(Polynomial::term(m, v.left), system.variables, params) + " vs " +
                      ingest::print_polynomial(Polynomial::term(m, v.right), system.variables, params);
      result.violations.push_back(std::move(v));
    }
  }
  return result;
}

CheckResult check_fb(const PolynomialODESystem& system, const Partition& part) {
  check_sizes(system, part);
  for (const auto& f : system.derivatives) {
    if (f.degree() > 2) throw UnsupportedError("forward bisimulation needs degree <= 2; use the SMT FDE check instead");
  }
  FbCoefficientView view(system, part);
  CheckResult result;
  auto params = parameter_names(system);
  for (std::size_t b = 0; b < part.block_count(); ++b) {
    const auto& members = part.block(b);
    std::size_t rep = members.front();
    FbSignature expected = fb_signature(view, rep);
    for (std::size_t idx = 1; idx < members.size(); ++idx) {
      std::size_t k = members[idx];
      FbSignature got = fb_signature(view, k);
      if (got == expected) continue;
      auto less = [](const auto& a, const auto& c) {
        return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
               std::tie(std::get<0>(c), std::get<1>(c), std::get<2>(c));
      };
      // First position where the two sorted rows disagree.
      auto ie = expected.begin();
      auto ig = got.begin();
      while (ie != expected.end() && ig != got.end() && *ie == *ig) {
        ++ie;
        ++ig;
      }
      Violation v;
      v.first = rep;
      v.second = k;
      std::uint32_t column;
      bool diag;
      if (ig == got.end() || (ie != expected.end() && less(*ie, *ig))) {
        v.block = std::get<0>(*ie);
        column = std::get<1>(*ie);
        diag = std::get<2>(*ie);
      } else {
        v.block = std::get<0>(*ig);
        column = std::get<1>(*ig);
        diag = std::get<2>(*ig);
      }
      std::string where;
      if (column == FbCoefficientView::linear_column) {
        v.left = view.linear(v.block, rep);
        v.right = view.linear(v.block, k);
        v.monomial = Monomial::symbol(static_cast<std::uint32_t>(rep));
        where = "linear column sums";
      } else {
        v.left = view.quadratic(v.block, rep, column);
        v.right = view.quadratic(v.block, k, column);
        v.monomial = Monomial::symbol(column);
        where = diag || part.block_of(column) == b ? "quadratic mass inside the block (column " +
                                                         name_of(system, column) + ")"
                                                   : "quadratic column sums against " + name_of(system, column);
      }
      std::vector<std::string> target_names;
      for (std::size_t t : part.block(v.block)) target_names.push_back(name_of(system, t));
      std::string target = "{";
      for (std::size_t t = 0; t < target_names.size(); ++t) target += (t ? ", " : "") + target_names[t];
      target += "}";
      v.description = name_of(system, rep) + " ~ " + name_of(system, k) + ": " + where + " into block " + target +
                      " differ: " + ingest::print_coefficient(v.left, params) + " vs " +
                      ingest::print_coefficient(v.right, params);
      result.violations.push_back(std::move(v));
    }
  }
  return result;
}

}  // namespace odelump::syntactic
