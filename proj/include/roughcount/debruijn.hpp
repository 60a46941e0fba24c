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

#include <cstdint>

#include <json.hpp>

#include "roughcount/numerics.hpp"
#include "roughcount/sieve.hpp"
#include "roughcount/specfun.hpp"

namespace roughcount {

// mu_y(u) = int_1^u y^{t-u} omega(t) dt, evaluated as
// int_0^{u-1} e^{-s log y} omega(u - s) ds and cut at s = 40 / log y, where
// the weight has fallen below 5e-18. Returns 0 for u <= 1.
double mu_y(double y, double u, const PiecewiseFunctionTable& omega, const QuadratureSpec& q = {});
// Same with log y given directly, so that y^h and similar need not be formed.
double mu_log(double log_y, double u, const PiecewiseFunctionTable& omega,
              const QuadratureSpec& q = {});

// lambda(x, y) = e^gamma mu_y(u) log y, with x = y^u.
double lambda_log(double log_y, double u, const PiecewiseFunctionTable& omega,
                  const QuadratureSpec& q = {});

struct MainTermBreakdown {
  double x = 0.0;
  double y = 0.0;
  double u = 0.0;
  double mu = 0.0;
  double q = 0.0;
  double lambda = 0.0;
  double main_term = 0.0;
};

void to_json(nlohmann::json& j, const MainTermBreakdown& m);
void from_json(const nlohmann::json& j, MainTermBreakdown& m);

// mu_y(u) e^gamma x log y Q(y). Requires x >= y >= 2 and y <= pt.limit().
MainTermBreakdown main_term(double x, double y, const PrimeTable& pt,
                            const PiecewiseFunctionTable& omega, const QuadratureSpec& q = {});

// eta(x, y) = Phi / (x Q(y)) - lambda(x, y), with phi the exact count.
double eta(double x, double y, std::uint64_t phi, const PrimeTable& pt,
           const PiecewiseFunctionTable& omega, const QuadratureSpec& q = {});

// H_y(v) = sum_{y < p <= y^v} (1/p) prod_{y < q < p} (1 - 1/q), by a running
// product. Requires v >= 1 and y^v <= pt.limit().
double h_y(double v, double y, const PrimeTable& pt);

struct E1Value {
  double value;
  double bound;  // e^gamma y^{h-u}
};

// E_1(h; y, u) = e^gamma log y int_1^h t^{-1} y^{t-u} dt for 1 <= h <= u/2.
E1Value e1_closed_form(double h, double y, double u, const QuadratureSpec& q = {});

}  // namespace roughcount
