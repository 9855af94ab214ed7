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

#include "odelump/driver/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace odelump::driver {

namespace {

std::string describe_time(double t) {
  std::ostringstream s;
  s << t;
  return s.str();
}

/// Flat double-precision form of a polynomial system.
struct Compiled {
  struct Term {
    double coefficient;
    std::uint32_t first;  // into factors
    std::uint32_t count;
  };
  std::vector<std::uint32_t> factors;  // variable indices, repeated by exponent
  std::vector<Term> terms;
  std::vector<std::uint32_t> offsets;  // per derivative, into terms; size n + 1

  explicit Compiled(const PolynomialODESystem& s) {
    offsets.push_back(0);
    for (const auto& f : s.derivatives) {
      for (const auto& [m, c] : f.terms()) {
        if (!c.is_rational()) throw ModelError("cannot simulate a system with free parameters; bind them first");
        Term t{to_double(c.rational_value()), static_cast<std::uint32_t>(factors.size()), 0};
        for (const auto& [v, e] : m.factors()) {
          for (std::uint32_t k = 0; k < e; ++k) factors.push_back(v);
          t.count += e;
        }
        terms.push_back(t);
      }
      offsets.push_back(static_cast<std::uint32_t>(terms.size()));
    }
  }

  void eval(const std::vector<double>& x, std::vector<double>& out) const {
    for (std::size_t i = 0; i + 1 < offsets.size(); ++i) {
      double sum = 0.0;
      for (std::uint32_t t = offsets[i]; t < offsets[i + 1]; ++t) {
        const Term& term = terms[t];
        double v = term.coefficient;
        for (std::uint32_t k = 0; k < term.count; ++k) v *= x[factors[term.first + k]];
        sum += v;
      }
      out[i] = sum;
    }
  }
};

double peak(const std::vector<double>& series) {
  double m = 0.0;
  for (double v : series) m = std::max(m, std::fabs(v));
  return m;
}

BlockDeviation compare(std::size_t block, const std::vector<double>& got, const std::vector<double>& reference) {
  BlockDeviation d;
  d.block = block;
  for (std::size_t t = 0; t < got.size(); ++t) d.max_abs = std::max(d.max_abs, std::fabs(got[t] - reference[t]));
  double scale = peak(reference);
  d.max_rel = scale > 0.0 ? d.max_abs / scale : d.max_abs;
  return d;
}

void merge(BlockDeviation& into, const BlockDeviation& d) {
  into.max_abs = std::max(into.max_abs, d.max_abs);
  into.max_rel = std::max(into.max_rel, d.max_rel);
}

}  // namespace

DivergenceError::DivergenceError(double time, const std::string& variable)
    : Error("simulation diverged at t = " + describe_time(time) + " (variable '" + variable + "')"), time_(time) {}

Trajectory simulate(const PolynomialODESystem& system, const std::vector<double>& initial, double horizon,
                    double step) {
  if (!(step > 0.0)) throw ModelError("simulation step must be positive");
  if (!(horizon >= 0.0)) throw ModelError("simulation horizon must be non-negative");
  if (initial.size() != system.size()) throw ModelError("initial vector does not match the system");
  Compiled c(system.parameters.empty() ? system : instantiate(system));
  std::size_t n = system.size();
  auto steps = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
  Trajectory out;
  out.times.reserve(steps + 1);
  out.series.assign(n, {});
  for (auto& s : out.series) s.reserve(steps + 1);

  std::vector<double> x = initial;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  auto record = [&](double t) {
    out.times.push_back(t);
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(x[i])) throw DivergenceError(t, system.variables[i]);
      out.series[i].push_back(x[i]);
    }
  };
  record(0.0);
  for (std::size_t s = 0; s < steps; ++s) {
    double t = static_cast<double>(s) * step;
    double h = std::min(step, horizon - t);
    c.eval(x, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    c.eval(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    c.eval(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    c.eval(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    record(s + 1 == steps ? horizon : static_cast<double>(s + 1) * step);
  }
  return out;
}

std::vector<double> initial_values(const PolynomialODESystem& system) {
  std::vector<double> out;
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (system.initial.size() != system.size() || !system.initial[i]) {
      throw ModelError("missing initial value for '" + system.variables[i] + "'");
    }
    out.push_back(to_double(*system.initial[i]));
  }
  return out;
}

PolynomialODESystem equalise_initials(const PolynomialODESystem& system, const Partition& part) {
  PolynomialODESystem out = system;
  if (out.initial.size() != out.size()) return out;
  for (std::size_t i = 0; i < out.size(); ++i) out.initial[i] = system.initial[part.representative_of(i)];
  return out;
}

ValidationReport validate_reduction(const PolynomialODESystem& original, const QuotientModel& quotient,
                                    const Partition& part, const ValidationOptions& options) {
  if (part.size() != original.size()) throw ModelError("partition size does not match the system");
  if (quotient.reduced.size() != part.block_count()) throw ModelError("quotient does not match the partition");
  ValidationReport report;
  report.mode = quotient.mode;
  report.options = options;
  std::vector<double> x0 = initial_values(original);

  if (quotient.mode == Equivalence::backward) {
    for (const auto& block : part.blocks()) {
      for (std::size_t i : block) {
        if (*original.initial[i] != *original.initial[block.front()]) {
          throw ModelError("backward validation needs blockwise-equal initial values ('" + original.variables[i] +
                           "' differs from '" + original.variables[block.front()] + "')");
        }
      }
    }
  }
  Trajectory full = simulate(original, x0, options.horizon, options.step);

  std::vector<double> y0(part.block_count(), 0.0);
  for (std::size_t b = 0; b < part.block_count(); ++b) {
    if (quotient.mode == Equivalence::backward) {
      y0[b] = x0[part.representative(b)];
    } else {
      for (std::size_t i : part.block(b)) y0[b] += x0[i];
    }
  }
  Trajectory reduced = simulate(quotient.reduced, y0, options.horizon, options.step);

  for (std::size_t b = 0; b < part.block_count(); ++b) {
    BlockDeviation d;
    d.block = b;
    const auto& block = part.block(b);
    if (quotient.mode == Equivalence::backward) {
      const auto& rep = full.series[block.front()];
      for (std::size_t i : block) merge(d, compare(b, full.series[i], rep));
      merge(d, compare(b, reduced.series[b], rep));
    } else {
      std::vector<double> sum(full.times.size(), 0.0);
      for (std::size_t i : block) {
        for (std::size_t t = 0; t < sum.size(); ++t) sum[t] += full.series[i][t];
      }
      merge(d, compare(b, reduced.series[b], sum));
    }
    report.max_abs = std::max(report.max_abs, d.max_abs);
    report.max_rel = std::max(report.max_rel, d.max_rel);
    report.blocks.push_back(d);
  }
  report.passed = report.max_abs <= options.tolerance && report.max_rel <= options.tolerance;
  return report;
}

}  // namespace odelump::driver
