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

#include "roughcount/constants.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace roughcount {
namespace {

constexpr double kGridRatio = 1.01;
constexpr double kGridTop = 1e16;

// Maximum of f over t >= y0, sampled on a geometric grid. The last decade of
// the grid must be nonincreasing, otherwise the supremum is not captured.
template <class F>
double grid_sup(F&& f, double y0, const char* what) {
  std::vector<double> ts;
  for (double t = y0; t < kGridTop; t *= kGridRatio) ts.push_back(t);
  ts.push_back(kGridTop);
  std::vector<double> vals(ts.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    vals[i] = f(ts[i]);
    if (vals[i] > vals[best]) best = i;
  }
  for (std::size_t i = ts.size() - 1; i > 0 && ts[i - 1] >= kGridTop / 10.0; --i) {
    if (vals[i] > vals[i - 1] * (1.0 + 1e-12))
      throw std::runtime_error(std::string("supremum of ") + what +
                               " is still increasing at t = 1e16; check R");
  }
  if (best == 0 || best + 1 == ts.size()) return vals[best];
  const Extremum e =
      golden_minimize([&](double t) { return -f(t); }, ts[best - 1], ts[best + 1], 1e-9 * ts[best]);
  return std::max(vals[best], -e.value);
}

double inv_gamma(double t) { return std::exp(-std::lgamma(t)); }

// int_a^b split at the integers in between.
template <class F>
double integrate_by_units(F&& f, double a, double b, const QuadratureSpec& q) {
  CompensatedSum sum;
  for (double lo = a; lo < b;) {
    const double hi = std::min(b, std::floor(lo) + 1.0);
    sum += integrate_strict(f, lo, hi, q);
    lo = hi;
  }
  return sum.value();
}

// 1 - log(t-1) + 1/(t-1)^2, the weight on [2, 3] in the xi sums.
double xi_weight_23(double t) {
  const double s = t - 1.0;
  return 1.0 - std::log(s) + 1.0 / (s * s);
}

struct BranchConstants {
  double L;     // log of the branch's anchor y
  double term;  // the constant part inside the max(., 0)
  double c;     // c2 or d2
};

constexpr double kD1 = 2.0;
constexpr double kD2 = 1.2762;
constexpr double kD3 = 1.0;

double c1() { return 0.4 / std::log(kY1); }
double c2() { return 1.0 + 2.53816 / std::log(kY1); }
double c3() { return 1.0 + 2.0 / std::log(kY1); }

BranchConstants branch_constants(DeltaBranch branch) {
  const double m0 = omega_global_maximum().value;
  if (branch == DeltaBranch::large_y) return {std::log(kY1), 2.0 * c1() * m0, c2()};
  const double L = std::log(kSmallYFloor);
  return {L, 2.0 * kD1 * m0 * L / std::sqrt(kSmallYFloor), kD2};
}

double g_of_u(double c, double u) {
  return c / (u * u) * (std::log(u - 1.0) + (u - 2.0) / (u - 1.0));
}

struct BaseInfimum {
  double value;
  double u;
};

BaseInfimum infimum_over_u(DeltaBranch branch, double y, const DeltaOptions& opt) {
  const int n = static_cast<int>(std::lround(1.0 / opt.du));
  BaseInfimum best{delta_base_case(branch, 2.0, y, opt), 2.0};
  for (int i = 1; i <= n; ++i) {
    const double u = 2.0 + static_cast<double>(i) / n;
    const double v = delta_base_case(branch, u, y, opt);
    if (v < best.value) best = {v, u};
  }
  const double lo = std::max(2.0, best.u - opt.du), hi = std::min(3.0, best.u + opt.du);
  const Extremum e =
      golden_minimize([&](double u) { return delta_base_case(branch, u, y, opt); }, lo, hi, 1e-12);
  if (e.value < best.value) best = {e.value, e.x};
  return best;
}

DeltaBounds branch_bounds(DeltaBranch branch, const DeltaOptions& opt) {
  DeltaBounds out;
  out.branch = branch;
  std::vector<double> ys;
  if (branch == DeltaBranch::large_y) {
    for (int j = 0; j <= 40; ++j) ys.push_back(kY1 * std::pow(10.0, j / 4.0));
  } else {
    const int n = 240;
    for (int j = 0; j <= n; ++j)
      ys.push_back(kSmallYFloor * std::pow(kY1 / kSmallYFloor, static_cast<double>(j) / n));
  }
  double prev = -INFINITY;
  out.delta3 = INFINITY;
  for (double y : ys) {
    const BaseInfimum b = infimum_over_u(branch, y, opt);
    if (b.value < prev - 1e-15) out.monotone_in_y = false;
    prev = b.value;
    if (b.value < out.delta3) {
      out.delta3 = b.value;
      out.u_at_delta3 = b.u;
      out.y_at_delta3 = y;
    }
  }
  if (branch == DeltaBranch::small_y) out.monotone_in_y = true;

  double dk = out.delta3;
  for (int k = 3; k < opt.k_max; ++k) {
    dk = std::min(dk, delta_recursion_step(branch, k, dk, out.delta3, opt));
    if (k == 3) out.delta4 = dk;
  }
  if (delta_recursion_step(branch, opt.k_max, dk, out.delta3, opt) < dk)
    throw std::runtime_error("delta_lower_bounds: recursion not stationary at k_max");
  out.delta_inf = dk;
  return out;
}

}  // namespace

const char* to_string(Mode mode) { return mode == Mode::rh ? "rh" : "unconditional"; }

Mode mode_from_string(std::string_view s) {
  if (s == "unconditional") return Mode::unconditional;
  if (s == "rh") return Mode::rh;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "' (unconditional|rh)");
}

double r_unconditional(double z) {
  const double L = std::log(z);
  return 0.2593 * std::pow(L, 0.25) * std::exp(-std::sqrt(L / 6.315));
}

double r_rh(double z) {
  const double L = std::log(z);
  return L * L / (8.0 * std::numbers::pi * std::sqrt(z));
}

ApproxContext ApproxContext::make(Mode mode, double y0) {
  ApproxContext ctx{mode, y0, mode == Mode::rh ? r_rh : r_unconditional};
  ctx.validate();
  return ctx;
}

void ApproxContext::validate() const {
  const double floor = mode == Mode::rh ? 2657.0 : 229.0;
  if (!(y0 >= floor))
    throw std::domain_error(std::string("ApproxContext: ") + to_string(mode) +
                            " mode needs y0 >= " + std::to_string(static_cast<int>(floor)));
  if (!R) throw std::invalid_argument("ApproxContext: R is not set");
  double prev = R(y0);
  if (!(prev > 0.0)) throw std::domain_error("ApproxContext: R(y0) must be positive");
  for (double t = y0 * kGridRatio; t <= kGridTop; t *= kGridRatio) {
    const double r = R(t);
    if (!(r > 0.0 && r < prev)) throw std::domain_error("ApproxContext: R is not positive and decreasing");
    prev = r;
  }
}

double r_value(const ApproxContext& ctx, double z) {
  if (!(z >= ctx.y0)) throw std::domain_error("r_value: z must be at least y0");
  return ctx.R(z);
}

const std::array<std::string_view, kLedgerRows>& ledger_row_names() {
  static const std::array<std::string_view, kLedgerRows> names = {
      "y0", "R", "C0", "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "eta1", "sum_xi"};
  return names;
}

std::array<double, kLedgerRows> ledger_rows(const ConstantLedger& l) {
  return {l.y0,   l.R_y0, l.C[0], l.C[1], l.C[2], l.C[3],  l.C[4],
          l.C[5], l.C[6], l.C[7], l.C[8], l.eta1, l.sum_xi};
}

double i_y(double y, double u, const QuadratureSpec& q) {
  const double log_y = std::log(y);
  auto f = [&](double t) { return std::exp((t - u) * log_y) / (t * t); };
  return 1.0 / u + (u > 1.0 ? integrate_strict(f, 1.0, u, q) : 0.0);
}

ConstantLedger compute_ledger(const ApproxContext& ctx, const QuadratureSpec& q) {
  ctx.validate();
  q.validate();
  const double y0 = ctx.y0, log_y0 = std::log(y0);
  const auto& R = ctx.R;
  ConstantLedger l;
  l.mode = ctx.mode;
  l.y0 = y0;
  l.R_y0 = R(y0);
  const double r0 = l.R_y0;

  l.sup_inv_tR = grid_sup([&](double t) { return 1.0 / (t * R(t)); }, y0, "1/(tR)");
  l.sup_log_over_tR = grid_sup([&](double t) { return std::log(t) / (t * R(t)); }, y0, "log t/(tR)");
  l.sup_half_inv = grid_sup([&](double t) { return 1.0 / (2.0 * (t - 1.0) * R(t)); }, y0,
                            "1/(2(t-1)R)");

  auto& C = l.C;
  C[0] = ctx.mode == Mode::rh ? 2.0 * (log_y0 + 2.0) / (log_y0 * log_y0)
                              : 2.0 * std::sqrt(6.315 / log_y0);
  C[1] = 2.0 * -std::log1p(-1.0 / y0) * y0 / log_y0 + C[0] * y0 / (y0 - 1.0);
  C[2] = C[1] + l.sup_half_inv;
  C[3] = std::expm1(C[1] * r0) / r0;
  C[4] = C[2];
  C[5] = std::expm1(C[2] * r0) / r0;
  C[6] = C[1];
  C[7] = std::max(C[3], C[4]);

  l.eta1 = l.sup_log_over_tR + C[3] + 2.0 * (1.0 + C[3] * r0);

  l.I2 = i_y(y0, 2.0, q);
  const double tail_inv_gamma = integrate_by_units(inv_gamma, 3.0, 60.0, q);
  const double w23 = integrate_strict(
      [&](double t) { return std::exp((t - 2.0) * log_y0) * xi_weight_23(t); }, 2.0, 3.0, q);
  const double ig = integrate_strict(
      [&](double t) { return std::exp(t * log_y0) * incomplete_gamma_ratio(t); }, 0.0, 1.0, q);
  const double e = std::numbers::e;
  l.sum_xi = y0 / (y0 - 1.0) * l.sup_inv_tR +
             C[7] * (e - 0.5 + tail_inv_gamma +
                     (2.0 * std::numbers::ln2 - 1.0 + y0 * l.I2 + w23 + 2.0 * e * ig) / (y0 - 1.0));

  l.beta = y0 < 1e8 ? 1.0 : std::exp(C[2] * r0);
  C[8] = l.beta * (l.eta1 + l.sum_xi);
  return l;
}

double xi_k(const ApproxContext& ctx, const ConstantLedger& l, int k, const QuadratureSpec& q) {
  if (k < 2) throw std::domain_error("xi_k: need k >= 2");
  const double c7 = l.C[7];
  if (k == 2) return l.sup_inv_tR + c7 * (l.I2 + 1.5);
  const double log_y0 = std::log(ctx.y0);
  const double kk = k;
  auto scale = [&](double t) { return std::exp((t - kk) * log_y0); };
  const double y0_2k = scale(2.0);
  const double head = std::exp(-std::lgamma(kk));  // 1/(k-1)!
  const double unit = integrate_strict(inv_gamma, kk, kk + 1.0, q);
  const double i12 = integrate_strict([&](double t) { return scale(t) / (t * t); }, 1.0, 2.0, q);
  const double i23 = integrate_strict([&](double t) { return scale(t) * xi_weight_23(t); }, 2.0, 3.0, q);
  const double i3k = integrate_by_units([&](double t) { return scale(t) * inv_gamma(t); }, 3.0, kk, q);
  return l.sup_inv_tR * y0_2k +
         c7 * (head + unit + (2.0 * std::numbers::ln2 - 0.5) * y0_2k + i12 + i23 + 2.0 * i3k);
}

double xi_k(const ApproxContext& ctx, int k, const QuadratureSpec& q) {
  return xi_k(ctx, compute_ledger(ctx, q), k, q);
}

const std::array<PrintedColumn, 4>& printed_table() {
  static const std::array<PrintedColumn, 4> table = {{
      {Mode::unconditional, 229.0,
       {229.0, .156576, 2.156096, 2.534430, 2.548436, 3.110976, 2.548436, 3.131827, 2.534430,
        3.110976, 16.982691, 6.236726, 10.745960}},
      {Mode::unconditional, 1e8,
       {1e8, .097363, 1.171019, 1.279593, 1.279593, 1.362717, 1.279593, 1.362717, 1.279593,
        1.362717, 9.079975, 3.628074, 4.388310}},
      {Mode::rh, 2657.0,
       {2657.0, .047992, .317985, .571800, .575723, .579718, .575723, .583750, .571800, .579718,
        4.638553, 2.697198, 1.941356}},
      {Mode::rh, 1e8,
       {1e8, .001351, .120362, .228936, .228940, .228971, .228940, .228975, .228936, .228971,
        2.967998, 2.229726, .737355}},
  }};
  return table;
}

const char* to_string(DeltaBranch branch) {
  switch (branch) {
    case DeltaBranch::large_y: return "large";
    case DeltaBranch::small_y: return "small";
    case DeltaBranch::combined: return "combined";
  }
  return "?";
}

DeltaBranch delta_branch_from_string(std::string_view s) {
  if (s == "large" || s == "large_y") return DeltaBranch::large_y;
  if (s == "small" || s == "small_y") return DeltaBranch::small_y;
  if (s == "combined") return DeltaBranch::combined;
  throw std::invalid_argument("unknown branch '" + std::string(s) + "' (large|small|combined)");
}

double delta_base_case(DeltaBranch branch, double u, double y, const DeltaOptions& opt) {
  const double L = std::log(y);
  const double power = L / (u * std::pow(y, 1.5));
  const double u2 = u * u;
  if (branch == DeltaBranch::large_y) {
    const double a = c1(), b = c2(), c = c3();
    return g_of_u(c, u) - 2.0 * a / (u * L) + power -
           (2.0 - c + 4.0 * a * c / (L * L) + 8.0 * b / (u * L) + 8.0 * b * b / (u2 * L * L)) / u2;
  }
  if (branch == DeltaBranch::small_y) {
    const double sy = std::sqrt(y);
    return g_of_u(kD3, u) - 2.0 * kD1 / (u * sy) + (opt.small_y_power_term ? power : 0.0) -
           (2.0 - kD3 + 4.0 * kD1 * kD3 / (sy * L) + 8.0 * kD2 / (u * L) +
            8.0 * kD2 * kD2 / (u2 * L * L)) /
               u2;
  }
  throw std::invalid_argument("delta_base_case: pick the large or small branch");
}

double delta_recursion_step(DeltaBranch branch, int k, double delta_k, double delta3,
                            const DeltaOptions& opt) {
  if (branch == DeltaBranch::combined)
    throw std::invalid_argument("delta_recursion_step: pick the large or small branch");
  const BranchConstants bc = branch_constants(branch);
  const double lead = opt.recursion_delta3 ? delta3 : delta_k;
  const double kk = k;
  return 9.0 * lead / (kk * kk) + delta_k / 2.0 -
         std::max(bc.term - (bc.c / 3.0 - 1.0) * delta_k, 0.0) / bc.L;
}

DeltaBounds delta_lower_bounds(DeltaBranch branch, const DeltaOptions& opt) {
  if (!(opt.du > 0.0 && opt.du <= 0.1) || opt.k_max < 4)
    throw std::invalid_argument("delta_lower_bounds: need 0 < du <= 0.1 and k_max >= 4");
  if (branch != DeltaBranch::combined) return branch_bounds(branch, opt);
  const DeltaBounds large = branch_bounds(DeltaBranch::large_y, opt);
  const DeltaBounds small = branch_bounds(DeltaBranch::small_y, opt);
  DeltaBounds out = large.delta3 <= small.delta3 ? large : small;
  out.branch = DeltaBranch::combined;
  out.delta3 = std::min(large.delta3, small.delta3);
  out.delta4 = std::min(large.delta4, small.delta4);
  out.delta_inf = std::min(large.delta_inf, small.delta_inf);
  out.monotone_in_y = large.monotone_in_y && small.monotone_in_y;
  return out;
}

double omega_floor(const SpecialTables& tables) {
  const double interior = omega_interior_minimum(tables.omega).value;
  return std::min(interior, kExpMinusGamma - dickman_rho(3.0, tables.rho) / 4.0);
}

double omega_floor() { return omega_floor(default_tables()); }

}  // namespace roughcount
