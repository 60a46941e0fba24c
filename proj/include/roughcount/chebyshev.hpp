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

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace roughcount {

// Truncated Chebyshev expansion on [lo, hi], stored in the convention
//   f(u) ~ sum_k c[k] T_k(t) - c[0]/2,   t = (2u - lo - hi) / (hi - lo).
class ChebSeries {
 public:
  ChebSeries() = default;
  ChebSeries(double lo, double hi, std::vector<double> coeffs)
      : lo_(lo), hi_(hi), c_(std::move(coeffs)) {}

  // Interpolates f at n Chebyshev points of the first kind.
  template <class F>
  static ChebSeries fit(F&& f, double lo, double hi, int n) {
    std::vector<double> fx(n);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int j = 0; j < n; ++j)
      fx[j] = f(mid + half * std::cos(std::numbers::pi * (j + 0.5) / n));
    std::vector<double> c(n);
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += fx[j] * std::cos(std::numbers::pi * k * (j + 0.5) / n);
      c[k] = 2.0 * s / n;
    }
    return {lo, hi, std::move(c)};
  }

  double operator()(double u) const {
    if (c_.empty()) return 0.0;
    const double t = (2.0 * u - lo_ - hi_) / (hi_ - lo_);
    const double t2 = 2.0 * t;
    double d = 0.0, dd = 0.0;
    for (std::size_t k = c_.size() - 1; k >= 1; --k) {
      const double sv = d;
      d = t2 * d - dd + c_[k];
      dd = sv;
    }
    return t * d - dd + 0.5 * c_[0];
  }

  // Antiderivative normalised to vanish at lo.
  ChebSeries antiderivative() const {
    const std::size_t n = c_.size();
    std::vector<double> out(n + 1, 0.0);
    const double con = 0.25 * (hi_ - lo_);
    std::vector<double> c = c_;
    c.push_back(0.0);
    c.push_back(0.0);
    double sum = 0.0, fac = 1.0;
    for (std::size_t j = 1; j <= n; ++j) {
      out[j] = con * (c[j - 1] - c[j + 1]) / static_cast<double>(j);
      sum += fac * out[j];
      fac = -fac;
    }
    out[0] = 2.0 * sum;
    return {lo_, hi_, std::move(out)};
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::span<const double> coefficients() const { return c_; }
  int size() const { return static_cast<int>(c_.size()); }

 private:
  double lo_ = 0.0;
  double hi_ = 1.0;
  std::vector<double> c_;
};

}  // namespace roughcount
