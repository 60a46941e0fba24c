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

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "roughcount/verifier.hpp"

namespace roughcount {
namespace {

constexpr std::uint64_t kExhaustiveCap = 10'000'000;

// Smallest prime factor for 2..n (lpf[1] = 0 stands for "no prime factor").
std::vector<std::uint32_t> least_prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> lpf(n + 1, 0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (lpf[i]) continue;
    for (std::uint64_t j = i; j <= n; j += i)
      if (!lpf[j]) lpf[j] = static_cast<std::uint32_t>(i);
  }
  return lpf;
}

// One y: rough is the sorted list of n <= cap with lpf(n) > y, starting at 1.
// Phi(x, y) = k + 1 on [rough[k], rough[k+1]); the bound is largest at the
// left limit x -> rough[k+1], and the last step runs to cap inclusive.
void check_steps(ReportBuilder& b, const std::string& name, const std::vector<std::uint32_t>& rough,
                 double y, double x_lo, double cap) {
  const double slope = kLowerConstant / std::log(y);
  double worst_margin = std::numeric_limits<double>::infinity();
  double worst_x = 0.0, worst_lhs = 0.0;
  std::uint64_t passed = 0;
  auto check = [&](double count, double x_right) {
    const double rhs = slope * x_right;
    const double margin = count - rhs;
    if (!(margin > 0.0) || margin < 1e-12 * rhs) {
      b.lower(name, x_right, y, count, rhs);
      return;
    }
    ++passed;
    if (margin < worst_margin) {
      worst_margin = margin;
      worst_x = x_right;
      worst_lhs = count;
    }
  };
  for (std::size_t k = 0; k + 1 < rough.size(); ++k)
    if (rough[k + 1] > x_lo) check(static_cast<double>(k + 1), rough[k + 1]);
  check(static_cast<double>(rough.size()), cap);
  if (passed == 0) return;
  b.lower(name, worst_x, y, worst_lhs, slope * worst_x);
  b.tally(name, passed - 1);
}

}  // namespace

VerificationReport verify_lower_04(std::uint64_t x_cap, const VerifyOptions& opt) {
  (void)opt;
  const auto t0 = std::chrono::steady_clock::now();
  if (x_cap < 41 || x_cap > kExhaustiveCap)
    throw std::invalid_argument("verify_lower_04: exhaustive mode needs 41 <= x_cap <= 1e7");
  const auto n = static_cast<std::uint32_t>(x_cap);
  const std::vector<std::uint32_t> lpf = least_prime_factors(n);
  const double cap = static_cast<double>(x_cap);

  ReportBuilder b("lower", "unconditional");
  // Numbers free of 2, 3, 5.
  std::vector<std::uint32_t> rough{1};
  for (std::uint32_t m = 7; m <= n; ++m)
    if (lpf[m] > 5) rough.push_back(m);

  // Remark: y in [5, 7) with x >= 41; the count only depends on primes <= 5.
  check_steps(b, "remark_y_5", rough, 5.0, std::max(41.0, std::pow(5.0, 1.5)), cap);

  for (std::uint32_t y = 7; std::pow(static_cast<double>(y), 1.5) <= cap; ++y) {
    if (lpf[y] != y) continue;
    std::erase_if(rough, [&](std::uint32_t m) { return m != 1 && lpf[m] <= y; });
    check_steps(b, "theorem", rough, y, std::pow(static_cast<double>(y), 1.5), cap);
  }
  b.report().grid = {{"x_cap", x_cap}, {"exhaustive_x", true}};
  return b.finish(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

}  // namespace roughcount
