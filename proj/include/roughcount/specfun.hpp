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

#pragma once

#include <span>
#include <vector>

#include "roughcount/chebyshev.hpp"
#include "roughcount/numerics.hpp"

namespace roughcount {

enum class TableKind { buchstab, dickman };

const char* to_string(TableKind kind);

// One unit interval of a tabulated function. Values are
// exp(log_scale) * series(u); the scale keeps rho representable with full
// relative precision far into its decay.
struct TableInterval {
  double lo = 0.0;
  double hi = 0.0;
  double log_scale = 0.0;
  ChebSeries series;
};

// Piecewise-Chebyshev representation of omega (on [1, u_max]) or rho (on
// [0, u_max]) built by the method of steps. The closed forms are evaluated
// directly where they exist: omega on [1, 3], rho on [0, 2].
class PiecewiseFunctionTable {
 public:
  PiecewiseFunctionTable(TableKind kind, double u_max, double tol, double error_bound,
                         std::vector<TableInterval> intervals);

  TableKind kind() const { return kind_; }
  double u_max() const { return u_max_; }
  double tol() const { return tol_; }
  double error_bound() const { return error_bound_; }
  // e^{-gamma} for omega. rho has no constant tail; values past u_max are
  // produced by continuing the recursion on demand.
  double tail_value() const;
  // Left end of the tiled range: 1 for omega, 0 for rho.
  double domain_lo() const;
  std::span<const TableInterval> intervals() const { return intervals_; }

  double operator()(double u) const;

 private:
  double evaluate_rho_beyond(double u, bool log_space) const;
  friend double log_dickman_rho(double u, const PiecewiseFunctionTable& table);

  TableKind kind_;
  double u_max_;
  double tol_;
  double error_bound_;
  std::vector<TableInterval> intervals_;
};

struct SpecialTables {
  PiecewiseFunctionTable omega;
  PiecewiseFunctionTable rho;
};

// Method-of-steps construction. Requires u_max >= 4 and tol >= 1e-12; throws
// std::runtime_error if degree doubling up to 32 cannot meet tol.
PiecewiseFunctionTable build_table(TableKind kind, double u_max = 50.0, double tol = 1e-12);
SpecialTables build_tables(double u_max = 50.0, double tol = 1e-12);

// Tables with u_max = 50 and tol = 1e-12, built once on first use.
const SpecialTables& default_tables();

double buchstab_omega(double u, const PiecewiseFunctionTable& table);
double buchstab_omega(double u);

// omega'(u) = (omega(u-1) - omega(u)) / u, right derivative at u = 1, 2.
double buchstab_omega_derivative(double u, const PiecewiseFunctionTable& table);

double dickman_rho(double u, const PiecewiseFunctionTable& table);
double dickman_rho(double u);
double log_dickman_rho(double u, const PiecewiseFunctionTable& table);

// Principal value of the logarithmic integral for z > 1.
double log_integral(double z, const QuadratureSpec& q = {});

// gamma(t + 2, 1) / Gamma(t + 2) for t in [0, 1].
double incomplete_gamma_ratio(double t);

struct CriticalPoint {
  double u;
  double value;
};

// Zero of S(u) = u (omega(u - 1) - omega(u)) on [3, 4], i.e. the interior
// minimum of omega there.
CriticalPoint omega_interior_minimum(const PiecewiseFunctionTable& omega);
CriticalPoint omega_interior_minimum();

// Maximum of omega over [2, inf): the critical point of (log(u-1)+1)/u.
CriticalPoint omega_global_maximum();

}  // namespace roughcount
