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

#include <array>
#include <functional>
#include <string>
#include <string_view>

#include "roughcount/numerics.hpp"
#include "roughcount/specfun.hpp"

namespace roughcount {

enum class Mode { unconditional, rh };

const char* to_string(Mode mode);
Mode mode_from_string(std::string_view s);

// R(z) bounds the relative error of the prime number theorem:
// |pi(z) - li(z)| <= z R(z) / log z for z >= y0.
struct ApproxContext {
  Mode mode = Mode::unconditional;
  double y0 = 229.0;
  std::function<double(double)> R;

  // Standard R for the mode. Throws if y0 is below the mode's minimum
  // (229 unconditionally, 2657 under RH).
  static ApproxContext make(Mode mode, double y0);
  // Checks the y0 floor and that R is positive and strictly decreasing on a
  // log grid over [y0, 1e16].
  void validate() const;
};

double r_unconditional(double z);
double r_rh(double z);
double r_value(const ApproxContext& ctx, double z);

// One column of the constant table, plus the intermediate suprema and
// integrals so each entry can be recomputed from its formula.
struct ConstantLedger {
  Mode mode = Mode::unconditional;
  double y0 = 0.0;
  double R_y0 = 0.0;
  std::array<double, 9> C{};  // C0 .. C8
  double eta1 = 0.0;
  double sum_xi = 0.0;
  double beta = 1.0;

  double sup_inv_tR = 0.0;       // max_{t >= y0} 1/(t R(t))
  double sup_log_over_tR = 0.0;  // max_{t >= y0} log t/(t R(t))
  double sup_half_inv = 0.0;     // max_{t >= y0} 1/(2 (t-1) R(t))
  double I2 = 0.0;               // I_{y0}(2)
};

inline constexpr std::size_t kLedgerRows = 13;
// Row labels in table order: y0, R, C0..C8, eta1, sum_xi.
const std::array<std::string_view, kLedgerRows>& ledger_row_names();
std::array<double, kLedgerRows> ledger_rows(const ConstantLedger& ledger);

// Suprema use a x1.01 geometric grid on [y0, 1e16]; throws
// std::runtime_error if any supremand is still increasing over the last
// decade of the grid.
ConstantLedger compute_ledger(const ApproxContext& ctx, const QuadratureSpec& q = {});

// I_y(u) = 1/u + int_1^u t^{-2} y^{t-u} dt.
double i_y(double y, double u, const QuadratureSpec& q = {});

// xi_k(y0) for k >= 2, using C7 and max 1/(tR) from the ledger.
double xi_k(const ApproxContext& ctx, const ConstantLedger& ledger, int k,
            const QuadratureSpec& q = {});
double xi_k(const ApproxContext& ctx, int k, const QuadratureSpec& q = {});

struct PrintedColumn {
  Mode mode;
  double y0;
  std::array<double, kLedgerRows> rows;
};
// The four published columns: unconditional 229 and 1e8, RH 2657 and 1e8.
const std::array<PrintedColumn, 4>& printed_table();

// Lower bounds for Delta(x, y), where Phi = (x / log y)(omega(u) + Delta / log y).
enum class DeltaBranch { large_y, small_y, combined };

const char* to_string(DeltaBranch branch);
DeltaBranch delta_branch_from_string(std::string_view s);

inline constexpr double kY1 = 2278383.0;
inline constexpr double kSmallYFloor = 602.0;

struct DeltaOptions {
  // The small-y base case keeps the log y / (u y^{3/2}) term.
  bool small_y_power_term = false;
  // The recursion uses 9 Delta_3 / k^2 in place of 9 Delta_k / k^2.
  bool recursion_delta3 = false;
  int k_max = 200;
  double du = 1e-4;
};

struct DeltaBounds {
  DeltaBranch branch = DeltaBranch::combined;
  double delta3 = 0.0;
  double delta4 = 0.0;
  double delta_inf = 0.0;
  double u_at_delta3 = 0.0;
  double y_at_delta3 = 0.0;
  // Large-y branch: the base-case infimum was observed nondecreasing in y on
  // the sampled y values. Always true for the small-y branch, which scans y.
  bool monotone_in_y = true;
};

// The base-case expression, a lower bound for Delta on 2 <= u <= 3.
double delta_base_case(DeltaBranch branch, double u, double y, const DeltaOptions& opt = {});
// a_k^-: the lower bound propagated from Delta_k^- to the next unit interval.
double delta_recursion_step(DeltaBranch branch, int k, double delta_k, double delta3,
                            const DeltaOptions& opt = {});
DeltaBounds delta_lower_bounds(DeltaBranch branch, const DeltaOptions& opt = {});

// min(omega(u2), e^{-gamma} - rho(3)/4), a floor for omega on [3, inf).
double omega_floor(const SpecialTables& tables);
double omega_floor();

}  // namespace roughcount
