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

#include <doctest.h>

#include <cmath>

#include "roughcount/constants.hpp"
#include "roughcount/specfun.hpp"

using namespace roughcount;
using doctest::Approx;

namespace {

const ConstantLedger& ledger_for(std::size_t column) {
  static const std::array<ConstantLedger, 4> all = [] {
    std::array<ConstantLedger, 4> out;
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& col = printed_table()[i];
      out[i] = compute_ledger(ApproxContext::make(col.mode, col.y0));
    }
    return out;
  }();
  return all[column];
}

}  // namespace

TEST_CASE("R envelopes") {
  CHECK(r_unconditional(229.0) == Approx(0.156576).epsilon(1e-5));
  CHECK(r_rh(2657.0) == Approx(0.047992).epsilon(1e-4));
  const auto ctx = ApproxContext::make(Mode::rh, 2657.0);
  CHECK(r_value(ctx, 1e8) == r_rh(1e8));
  CHECK(ctx.R(1e4) == r_rh(1e4));
}

TEST_CASE("context validation") {
  CHECK_THROWS_AS(ApproxContext::make(Mode::unconditional, 228.0), std::domain_error);
  CHECK_THROWS_AS(ApproxContext::make(Mode::rh, 2600.0), std::domain_error);
  CHECK_NOTHROW(ApproxContext::make(Mode::rh, 2657.0));
  ApproxContext bad{Mode::unconditional, 300.0, [](double z) { return std::log(z); }};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  CHECK(mode_from_string("rh") == Mode::rh);
  CHECK_THROWS_AS(mode_from_string("grh"), std::invalid_argument);
}

TEST_CASE("ledger matches the published table cell by cell") {
  const auto& names = ledger_row_names();
  for (std::size_t c = 0; c < 4; ++c) {
    const auto ours = ledger_rows(ledger_for(c));
    const auto& theirs = printed_table()[c];
    for (std::size_t r = 0; r < kLedgerRows; ++r) {
      INFO(to_string(theirs.mode), " y0=", theirs.y0, " row ", names[r]);
      CHECK(std::abs(ours[r] - theirs.rows[r]) <= 5e-5);
    }
  }
}

TEST_CASE("ledger internal relations") {
  for (std::size_t c = 0; c < 4; ++c) {
    const auto& l = ledger_for(c);
    const double r0 = l.R_y0, y0 = l.y0;
    CHECK(l.C[4] == l.C[2]);
    CHECK(l.C[6] == l.C[1]);
    CHECK(l.C[7] == std::max(l.C[3], l.C[4]));
    CHECK(std::exp(l.C[1] * r0) - 1.0 == Approx(l.C[3] * r0).epsilon(1e-12));
    CHECK(std::exp(l.C[2] * r0) - 1.0 == Approx(l.C[5] * r0).epsilon(1e-12));
    CHECK(l.C[2] == Approx(l.C[1] + l.sup_half_inv).epsilon(1e-15));
    CHECK(l.eta1 == Approx(l.sup_log_over_tR + l.C[3] + 2.0 * (1.0 + l.C[3] * r0)).epsilon(1e-12));
    CHECK(l.C[8] == Approx(l.beta * (l.eta1 + l.sum_xi)).epsilon(1e-12));
    CHECK(l.beta == (y0 < 1e8 ? 1.0 : std::exp(l.C[2] * r0)));
    // R is decreasing, so the suprema sit at y0 for these envelopes.
    CHECK(l.sup_inv_tR >= 1.0 / (y0 * r0) * (1 - 1e-12));
    CHECK(l.I2 == Approx(i_y(y0, 2.0)).epsilon(1e-14));
  }
}

TEST_CASE("I_y") {
  CHECK(i_y(100.0, 1.0) == 1.0);
  // y = e: int_1^2 e^{t-2}/t^2 dt by a fine midpoint rule.
  double s = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double t = 1.0 + (i + 0.5) / n;
    s += std::exp(t - 2.0) / (t * t) / n;
  }
  CHECK(i_y(std::exp(1.0), 2.0) == Approx(0.5 + s).epsilon(1e-9));
}

TEST_CASE("sum of xi_k matches its closed form") {
  for (std::size_t c = 0; c < 4; ++c) {
    const auto& l = ledger_for(c);
    const auto& col = printed_table()[c];
    const auto ctx = ApproxContext::make(col.mode, col.y0);
    double direct = 0.0;
    for (int k = 2; k <= 60; ++k) direct += xi_k(ctx, l, k);
    CHECK(direct == Approx(l.sum_xi).epsilon(1e-7));
    CHECK(xi_k(ctx, l, 60) < 1e-15);
    CHECK(xi_k(ctx, l, 3) < xi_k(ctx, l, 2));
  }
  const auto ctx = ApproxContext::make(Mode::unconditional, 229.0);
  CHECK_THROWS_AS(xi_k(ctx, ledger_for(0), 1), std::domain_error);
}

TEST_CASE("ledger refuses a growing supremand") {
  // 1/(t R(t)) increases when R decays faster than 1/t.
  ApproxContext ctx{Mode::unconditional, 300.0, [](double z) { return 1e3 / (z * z); }};
  CHECK_THROWS(compute_ledger(ctx));
}

TEST_CASE("Delta lower bounds") {
  const auto large = delta_lower_bounds(DeltaBranch::large_y);
  CHECK(large.delta3 >= -0.301223 - 1e-4);
  CHECK(large.delta3 <= -0.301223 + 1e-5);
  CHECK(large.monotone_in_y);
  CHECK(large.delta4 <= large.delta3);
  CHECK(large.delta_inf <= large.delta4);

  const auto all = delta_lower_bounds(DeltaBranch::combined);
  const double printed[3] = {-0.563528, -0.887161, -0.955421};
  const double ours[3] = {all.delta3, all.delta4, all.delta_inf};
  for (int i = 0; i < 3; ++i) {
    CHECK(ours[i] >= printed[i] - 1e-4);
    CHECK(ours[i] <= printed[i] + 1e-5);
  }
  CHECK(all.y_at_delta3 == 602.0);
  CHECK(all.u_at_delta3 == Approx(2.0).epsilon(1e-3));
}

TEST_CASE("Delta variants differ from the default only where expected") {
  DeltaOptions keep;
  keep.small_y_power_term = true;
  const auto with_term = delta_lower_bounds(DeltaBranch::small_y, keep);
  const auto base = delta_lower_bounds(DeltaBranch::small_y);
  CHECK(with_term.delta3 > base.delta3);
  CHECK(with_term.delta3 - base.delta3 < 1e-3);
  DeltaOptions d3;
  d3.recursion_delta3 = true;
  const auto rec3 = delta_lower_bounds(DeltaBranch::small_y, d3);
  CHECK(rec3.delta3 == base.delta3);
  CHECK(rec3.delta_inf > base.delta_inf);
}

TEST_CASE("Delta recursion step") {
  const double d3 = -0.5;
  const double step = delta_recursion_step(DeltaBranch::small_y, 3, d3, d3);
  CHECK(step < d3);
  // With Delta_k = Delta_3 the two variants coincide.
  DeltaOptions d3opt;
  d3opt.recursion_delta3 = true;
  CHECK(delta_recursion_step(DeltaBranch::small_y, 3, d3, d3, d3opt) == step);
  CHECK(delta_recursion_step(DeltaBranch::small_y, 5, -0.7, d3, d3opt) !=
        delta_recursion_step(DeltaBranch::small_y, 5, -0.7, d3));
  CHECK_THROWS_AS(delta_recursion_step(DeltaBranch::combined, 3, d3, d3), std::invalid_argument);
  DeltaOptions bad;
  bad.du = 0.0;
  CHECK_THROWS_AS(delta_lower_bounds(DeltaBranch::large_y, bad), std::invalid_argument);
}

TEST_CASE("omega floor on [3, inf)") {
  const double floor = omega_floor();
  CHECK(floor == Approx(0.5493074).epsilon(2e-7));
  const auto& om = default_tables().omega;
  for (double u = 3.0; u <= 49.0; u += 0.001) CHECK_MESSAGE(buchstab_omega(u, om) >= floor, u);
}
