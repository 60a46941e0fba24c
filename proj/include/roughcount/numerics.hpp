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

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace roughcount {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kExpMinusGamma = 0.56145948356688516982414321479088078;
inline constexpr double kExpGamma = 1.78107241799019798523650410310717954;

// Tolerances for adaptive quadrature.
struct QuadratureSpec {
  double abs_tol = 1e-15;
  double rel_tol = 1e-12;
  int max_depth = 40;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol >= 0.0) || max_depth < 1)
      throw std::invalid_argument("QuadratureSpec: need abs_tol > 0, rel_tol >= 0, max_depth >= 1");
  }
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  int depth;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const double s = fv1[j] + fv2[j];
    resk += kWgk[j] * s;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * s;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  resk *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  return {a, b, resk, err, depth};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) quadrature. The interval with the
// largest error estimate is bisected until the summed estimate meets
// max(abs_tol, rel_tol * |I|) or every remaining piece is at max_depth.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  if (a == b) return {};
  if (a > b) {
    QuadResult r = integrate(f, b, a, spec);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<detail::Segment> open;
  std::vector<detail::Segment> done;
  open.push(detail::gk15(f, a, b, 0));
  int evals = 15;
  double total = open.top().value, err = open.top().error;
  while (!open.empty()) {
    if (err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) break;
    detail::Segment s = open.top();
    open.pop();
    if (s.depth >= spec.max_depth) {
      done.push_back(s);
      continue;
    }
    const double mid = 0.5 * (s.a + s.b);
    detail::Segment l = detail::gk15(f, s.a, mid, s.depth + 1);
    detail::Segment r = detail::gk15(f, mid, s.b, s.depth + 1);
    evals += 30;
    total += l.value + r.value - s.value;
    err += l.error + r.error - s.error;
    open.push(l);
    open.push(r);
  }
  // Re-sum from the pieces to shed the drift of the running totals.
  double value = 0.0, c = 0.0, e = 0.0;
  auto add = [&](double v) {
    const double t = value + v;
    c += std::abs(value) >= std::abs(v) ? (value - t) + v : (v - t) + value;
    value = t;
  };
  for (const auto& s : done) { add(s.value); e += s.error; }
  while (!open.empty()) { add(open.top().value); e += open.top().error; open.pop(); }
  value += c;
  QuadResult out{value, e, evals, e <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value))};
  return out;
}

// Convenience wrapper that throws when the requested tolerance was not met.
template <class F>
double integrate_strict(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  QuadResult r = integrate(f, a, b, spec);
  if (!r.converged)
    throw std::runtime_error("quadrature did not reach the requested tolerance");
  return r.value;
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) { add(v); return *this; }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Bisection on a bracketing interval; f(lo) and f(hi) must differ in sign.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (std::signbit(flo) == std::signbit(fhi))
    throw std::domain_error("bisect: no sign change on the bracket");
  while (hi - lo > xtol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Extremum {
  double x;
  double value;
};

// Golden-section search for a minimum of a unimodal f on [lo, hi].
template <class F>
Extremum golden_minimize(F&& f, double lo, double hi, double xtol = 1e-12) {
  const double invphi = 0.6180339887498949;
  double c = hi - invphi * (hi - lo), d = lo + invphi * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > xtol) {
    if (fc < fd) {
      hi = d; d = c; fd = fc;
      c = hi - invphi * (hi - lo); fc = f(c);
    } else {
      lo = c; c = d; fc = fd;
      d = lo + invphi * (hi - lo); fd = f(d);
    }
  }
  Extremum best{lo, f(lo)};
  for (double x : {hi, 0.5 * (lo + hi)}) {
    const double v = f(x);
    if (v < best.value) best = {x, v};
  }
  return best;
}

}  // namespace roughcount
