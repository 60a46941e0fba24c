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

#include "roughcount/debruijn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace roughcount {
namespace {

constexpr double kWeightCut = 40.0;

void require_y(double y, const char* who) {
  if (!(y >= 2.0) || !std::isfinite(y)) throw std::domain_error(std::string(who) + ": need y >= 2");
}

}  // namespace

double mu_log(double log_y, double u, const PiecewiseFunctionTable& omega, const QuadratureSpec& q) {
  if (!(log_y > 0.0)) throw std::domain_error("mu_log: need log y > 0");
  if (!(u > 1.0)) return 0.0;
  q.validate();
  const double s_end = std::min(u - 1.0, kWeightCut / log_y);
  auto f = [&](double s) { return std::exp(-s * log_y) * buchstab_omega(u - s, omega); };
  // omega is only piecewise smooth, with kinks at the integers; split there.
  CompensatedSum total;
  double a = 0.0;
  for (double k = std::floor(u); a < s_end; k -= 1.0) {
    double b = std::min(u - k, s_end);
    if (b <= a) continue;
    total += integrate_strict(f, a, b, q);
    a = b;
  }
  return total.value();
}

double mu_y(double y, double u, const PiecewiseFunctionTable& omega, const QuadratureSpec& q) {
  require_y(y, "mu_y");
  return mu_log(std::log(y), u, omega, q);
}

double lambda_log(double log_y, double u, const PiecewiseFunctionTable& omega,
                  const QuadratureSpec& q) {
  return kExpGamma * mu_log(log_y, u, omega, q) * log_y;
}

void to_json(nlohmann::json& j, const MainTermBreakdown& m) {
  j = {{"x", m.x},   {"y", m.y},           {"u", m.u},
       {"mu", m.mu}, {"q", m.q},           {"lambda", m.lambda},
       {"main_term", m.main_term}};
}

void from_json(const nlohmann::json& j, MainTermBreakdown& m) {
  j.at("x").get_to(m.x);
  j.at("y").get_to(m.y);
  j.at("u").get_to(m.u);
  j.at("mu").get_to(m.mu);
  j.at("q").get_to(m.q);
  j.at("lambda").get_to(m.lambda);
  j.at("main_term").get_to(m.main_term);
}

MainTermBreakdown main_term(double x, double y, const PrimeTable& pt,
                            const PiecewiseFunctionTable& omega, const QuadratureSpec& q) {
  require_y(y, "main_term");
  if (!(x >= y)) throw std::domain_error("main_term: need x >= y");
  MainTermBreakdown m;
  m.x = x;
  m.y = y;
  const double log_y = std::log(y);
  m.u = std::log(x) / log_y;
  m.mu = mu_log(log_y, m.u, omega, q);
  m.q = mertens_product(y, pt);
  m.lambda = kExpGamma * m.mu * log_y;
  m.main_term = m.lambda * x * m.q;
  return m;
}

double eta(double x, double y, std::uint64_t phi, const PrimeTable& pt,
           const PiecewiseFunctionTable& omega, const QuadratureSpec& q) {
  require_y(y, "eta");
  if (!(x >= y)) throw std::domain_error("eta: need x >= y");
  const double log_y = std::log(y);
  const double psi = static_cast<double>(phi) / (x * mertens_product(y, pt));
  return psi - lambda_log(log_y, std::log(x) / log_y, omega, q);
}

double h_y(double v, double y, const PrimeTable& pt) {
  require_y(y, "h_y");
  if (!(v >= 1.0)) throw std::domain_error("h_y: need v >= 1");
  const double top = std::pow(y, v);
  if (top >= static_cast<double>(pt.limit()) + 1.0)
    throw SieveRangeError("h_y: y^v exceeds the prime table");
  const auto primes = pt.primes();
  const auto first = std::upper_bound(primes.begin(), primes.end(), std::floor(y),
                                      [](double a, std::uint32_t p) { return a < p; });
  const auto last = std::upper_bound(primes.begin(), primes.end(), std::floor(top),
                                     [](double a, std::uint32_t p) { return a < p; });
  CompensatedSum sum;
  double running = 1.0;
  for (auto it = first; it != last; ++it) {
    const double inv = 1.0 / *it;
    sum += running * inv;
    running *= 1.0 - inv;
  }
  return sum.value();
}

E1Value e1_closed_form(double h, double y, double u, const QuadratureSpec& q) {
  require_y(y, "e1_closed_form");
  if (!(h >= 1.0 && h <= 0.5 * u)) throw std::domain_error("e1_closed_form: need 1 <= h <= u/2");
  const double log_y = std::log(y);
  auto f = [&](double t) { return std::exp((t - u) * log_y) / t; };
  const double integral = h > 1.0 ? integrate_strict(f, 1.0, h, q) : 0.0;
  return {kExpGamma * log_y * integral, kExpGamma * std::exp((h - u) * log_y)};
}

}  // namespace roughcount
