// Copyright 2026 The roughcount Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "roughcount/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace roughcount {
namespace {

constexpr int kDegrees[] = {8, 12, 16, 24, 32};
constexpr int kSamples = 65;

double omega_closed_23(double u) { return (std::log(u - 1.0) + 1.0) / u; }
double rho_closed_12(double u) { return 1.0 - std::log(u); }

template <class F>
double max_deviation(const ChebSeries& s, F&& reference) {
  double worst = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double u = s.lo() + (s.hi() - s.lo()) * i / (kSamples - 1);
    worst = std::max(worst, std::abs(s(u) - reference(u)));
  }
  return worst;
}

struct StepResult {
  TableInterval interval;
  double local_error;
};

// Fits a closed form on [lo, lo + 1] at the lowest degree meeting local_tol.
template <class F>
StepResult fit_closed_form(F&& f, double lo, double local_tol) {
  for (int n : kDegrees) {
    ChebSeries s = ChebSeries::fit(f, lo, lo + 1.0, n);
    const double err = max_deviation(s, f);
    if (err <= local_tol) return {{lo, lo + 1.0, 0.0, std::move(s)}, err};
  }
  throw std::runtime_error("closed-form fit did not converge on [" + std::to_string(lo) + ", " +
                           std::to_string(lo + 1.0) + "]");
}

// omega on [k, k+1]:  u omega(u) = k omega(k) + int_{k}^{u} omega(t-1) dt.
ChebSeries omega_step_fit(const TableInterval& prev, int n) {
  const double k = prev.hi;
  const ChebSeries lag = prev.series.antiderivative();
  const double anchor = k * prev.series(k);
  return ChebSeries::fit([&](double u) { return (anchor + lag(u - 1.0)) / u; }, k, k + 1.0, n);
}

// rho on [k, k+1], relative to scale rho(k):
//   u g(u) = r (L(k) - L(u-1)) + int_k^u g,   r = 1 / prev.series(k),
// from u rho(u) = int_{u-1}^{u} rho. The right side is a contraction with
// factor at most 1/(k+1), so a few dozen sweeps reach rounding level.
ChebSeries rho_step_fit(const TableInterval& prev, int n) {
  const double k = prev.hi;
  const ChebSeries lag = prev.series.antiderivative();
  const double r = 1.0 / prev.series(k);
  const double lag_total = lag(k);
  ChebSeries g = ChebSeries::fit([](double) { return 1.0; }, k, k + 1.0, n);
  for (int iter = 0; iter < 200; ++iter) {
    const ChebSeries acc = g.antiderivative();
    ChebSeries next = ChebSeries::fit(
        [&](double u) { return (r * (lag_total - lag(u - 1.0)) + acc(u)) / u; }, k, k + 1.0, n);
    double change = 0.0;
    for (int i = 0; i < n; ++i)
      change = std::max(change, std::abs(next.coefficients()[i] - g.coefficients()[i]));
    g = std::move(next);
    if (change <= 1e-18) break;
  }
  return g;
}

StepResult advance(TableKind kind, const TableInterval& prev, double local_tol) {
  const double k = prev.hi;
  const double log_scale =
      kind == TableKind::dickman ? prev.log_scale + std::log(prev.series(k)) : 0.0;
  // Scale of absolute errors in this interval.
  const double scale = kind == TableKind::dickman ? std::exp(log_scale) : 1.0;
  for (int n : kDegrees) {
    ChebSeries coarse = kind == TableKind::buchstab ? omega_step_fit(prev, n) : rho_step_fit(prev, n);
    ChebSeries fine =
        kind == TableKind::buchstab ? omega_step_fit(prev, 2 * n) : rho_step_fit(prev, 2 * n);
    const double err = scale * max_deviation(coarse, fine);
    if (err <= local_tol) return {{k, k + 1.0, log_scale, std::move(coarse)}, err};
  }
  throw std::runtime_error(std::string("node doubling did not converge for ") +
                           to_string(kind) + " on [" + std::to_string(k) + ", " +
                           std::to_string(k + 1.0) + "]");
}

}  // namespace

const char* to_string(TableKind kind) {
  return kind == TableKind::buchstab ? "buchstab" : "dickman";
}

PiecewiseFunctionTable::PiecewiseFunctionTable(TableKind kind, double u_max, double tol,
                                               double error_bound,
                                               std::vector<TableInterval> intervals)
    : kind_(kind), u_max_(u_max), tol_(tol), error_bound_(error_bound),
      intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw std::invalid_argument("PiecewiseFunctionTable: no intervals");
  double expect = kind_ == TableKind::buchstab ? 2.0 : 1.0;
  for (const auto& iv : intervals_) {
    if (iv.lo != expect || iv.hi != iv.lo + 1.0 || iv.series.size() == 0)
      throw std::invalid_argument("PiecewiseFunctionTable: intervals must tile unit steps");
    expect = iv.hi;
  }
  if (expect != u_max_) throw std::invalid_argument("PiecewiseFunctionTable: tiling must end at u_max");
}

double PiecewiseFunctionTable::tail_value() const {
  return kind_ == TableKind::buchstab ? kExpMinusGamma : 0.0;
}

double PiecewiseFunctionTable::domain_lo() const {
  return kind_ == TableKind::buchstab ? 1.0 : 0.0;
}

double PiecewiseFunctionTable::operator()(double u) const {
  const std::size_t first = kind_ == TableKind::buchstab ? 2 : 1;
  if (kind_ == TableKind::buchstab) {
    if (u < 1.0) return 0.0;
    if (u <= 2.0) return 1.0 / u;
    if (u <= 3.0) return omega_closed_23(u);
    if (u > u_max_) return kExpMinusGamma;
  } else {
    if (u < 0.0) return 0.0;
    if (u <= 1.0) return 1.0;
    if (u <= 2.0) return rho_closed_12(u);
    if (u > u_max_) return evaluate_rho_beyond(u, false);
  }
  std::size_t idx = static_cast<std::size_t>(std::floor(u)) - first;
  idx = std::min(idx, intervals_.size() - 1);
  const TableInterval& iv = intervals_[idx];
  return std::exp(iv.log_scale) * iv.series(u);
}

double PiecewiseFunctionTable::evaluate_rho_beyond(double u, bool log_space) const {
  TableInterval cur = intervals_.back();
  while (cur.hi < u) {
    const double k = cur.hi;
    const double log_scale = cur.log_scale + std::log(cur.series(k));
    cur = TableInterval{k, k + 1.0, log_scale, rho_step_fit(cur, 32)};
  }
  const double g = cur.series(u);
  return log_space ? cur.log_scale + std::log(g) : std::exp(cur.log_scale) * g;
}

PiecewiseFunctionTable build_table(TableKind kind, double u_max, double tol) {
  if (!std::isfinite(u_max) || u_max < 4.0)
    throw std::invalid_argument("build_table: u_max must be finite and >= 4");
  if (!(tol >= 1e-12)) throw std::invalid_argument("build_table: tol must be >= 1e-12");
  const double top = std::ceil(u_max);
  const double start = kind == TableKind::buchstab ? 2.0 : 1.0;
  const auto count = static_cast<int>(top - start);
  const double local_tol = tol / (2.0 * count);

  std::vector<TableInterval> intervals;
  intervals.reserve(count);
  StepResult first = kind == TableKind::buchstab
                         ? fit_closed_form(omega_closed_23, 2.0, local_tol)
                         : fit_closed_form(rho_closed_12, 1.0, local_tol);
  // Evaluation, interval endpoints and closed-form pieces each add a few ulps.
  double error_bound = 64.0 * std::numeric_limits<double>::epsilon() + first.local_error;
  intervals.push_back(std::move(first.interval));
  // Errors in the lag integral are averaged (divided by u >= its length), so
  // they do not grow from one step to the next; the local errors add.
  for (int i = 1; i < count; ++i) {
    StepResult next = advance(kind, intervals.back(), local_tol);
    error_bound += next.local_error;
    intervals.push_back(std::move(next.interval));
  }
  if (error_bound > tol)
    throw std::runtime_error("build_table: accumulated error estimate exceeds tol");
  return {kind, top, tol, error_bound, std::move(intervals)};
}

SpecialTables build_tables(double u_max, double tol) {
  return {build_table(TableKind::buchstab, u_max, tol), build_table(TableKind::dickman, u_max, tol)};
}

const SpecialTables& default_tables() {
  static const SpecialTables tables = build_tables();
  return tables;
}

double buchstab_omega(double u, const PiecewiseFunctionTable& table) {
  if (table.kind() != TableKind::buchstab)
    throw std::invalid_argument("buchstab_omega: table is not a buchstab table");
  return table(u);
}

double buchstab_omega(double u) { return buchstab_omega(u, default_tables().omega); }

double buchstab_omega_derivative(double u, const PiecewiseFunctionTable& table) {
  if (u < 1.0) return 0.0;
  return (buchstab_omega(u - 1.0, table) - buchstab_omega(u, table)) / u;
}

double dickman_rho(double u, const PiecewiseFunctionTable& table) {
  if (table.kind() != TableKind::dickman)
    throw std::invalid_argument("dickman_rho: table is not a dickman table");
  return table(u);
}

double dickman_rho(double u) { return dickman_rho(u, default_tables().rho); }

double log_dickman_rho(double u, const PiecewiseFunctionTable& table) {
  if (table.kind() != TableKind::dickman)
    throw std::invalid_argument("log_dickman_rho: table is not a dickman table");
  if (u < 0.0) return -std::numeric_limits<double>::infinity();
  if (u > table.u_max()) return table.evaluate_rho_beyond(u, true);
  if (u <= 2.0) return std::log(table(u));
  const std::size_t idx =
      std::min(static_cast<std::size_t>(std::floor(u)) - 1, table.intervals_.size() - 1);
  const TableInterval& iv = table.intervals_[idx];
  return iv.log_scale + std::log(iv.series(u));
}

double log_integral(double z, const QuadratureSpec& q) {
  if (!(z > 1.0)) throw std::domain_error("log_integral: z must exceed 1");
  q.validate();
  // li(z) = gamma + log(z - 1) + int_1^z (1/log t - 1/(t - 1)) dt, using
  // int_0^1 (1/log t - 1/(t - 1)) dt = gamma. With t = e^s the remaining
  // integrand is e^s (1/s - 1/(e^s - 1)), regular at s = 0.
  auto integrand = [](double s) {
    if (s < 0.1) {
      const double s2 = s * s;
      const double bern =
          0.5 - s * (1.0 / 12.0 -
                     s2 * (1.0 / 720.0 -
                           s2 * (1.0 / 30240.0 - s2 * (1.0 / 1209600.0 - s2 / 47900160.0))));
      return std::exp(s) * bern;
    }
    return std::exp(s) / s - 1.0 / (-std::expm1(-s));
  };
  const double s_max = std::log(z);
  QuadratureSpec spec = q;
  spec.abs_tol = std::min(spec.abs_tol, 1e-300);
  const QuadResult r = integrate(integrand, 0.0, s_max, spec);
  return kEulerGamma + std::log(z - 1.0) + r.value;
}

double incomplete_gamma_ratio(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("incomplete_gamma_ratio: t must lie in [0, 1]");
  // gamma(s,1)/Gamma(s) = e^{-1} sum_{n>=0} 1/Gamma(s+n+1),  s = t + 2.
  const double s = t + 2.0;
  double term = 1.0 / std::tgamma(s + 1.0);
  CompensatedSum sum;
  for (int n = 0; term >= 1e-18; ++n) {
    sum += term;
    term /= s + n + 1.0;
  }
  sum += term;
  return sum.value() / std::numbers::e;
}

CriticalPoint omega_interior_minimum(const PiecewiseFunctionTable& omega) {
  auto s_of_u = [&](double u) {
    return u * (buchstab_omega(u - 1.0, omega) - buchstab_omega(u, omega));
  };
  const double u2 = bisect(s_of_u, 3.0, 4.0, 1e-10);
  return {u2, buchstab_omega(u2, omega)};
}

CriticalPoint omega_interior_minimum() { return omega_interior_minimum(default_tables().omega); }

CriticalPoint omega_global_maximum() {
  auto slope = [](double u) {
    return 1.0 / (u * (u - 1.0)) - (std::log(u - 1.0) + 1.0) / (u * u);
  };
  const double u = bisect(slope, 2.0, 3.0, 1e-14);
  return {u, omega_closed_23(u)};
}

}  // namespace roughcount
