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

#include "roughcount/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "roughcount/debruijn.hpp"

namespace roughcount {
namespace {

constexpr double kInconclusiveRel = 1e-12;
constexpr double kStepOffset = 0x1p-20;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// x (log y)^{-3/4} exp(-sqrt(log y / 6.315))
double unconditional_envelope(double x, double y) {
  const double L = std::log(y);
  return x * std::pow(L, -0.75) * std::exp(-std::sqrt(L / 6.315));
}

// x log y / sqrt(y)
double rh_envelope(double x, double y) { return x * std::log(y) / std::sqrt(y); }

const char* rh_label(Mode mode) {
  return mode == Mode::rh ? "conditional claim, unconditionally sampled" : "";
}

// Runs body(i) for i in [0, n) on `workers` threads. The first exception is
// rethrown after all threads have joined.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

struct Sample {
  double x;
  double y;
};

std::vector<Sample> grid_samples(const GridSpec& grid) {
  std::vector<Sample> out;
  const double cap = static_cast<double>(grid.x_cap);
  for (double y : grid.y_values) {
    std::vector<double> xs{y};
    for (double u : grid.u_values) {
      const double X = std::pow(y, u);
      if (!(X <= cap)) continue;
      const double fl = std::floor(X);
      for (double x : {X, fl, fl * (1.0 - kStepOffset)})
        if (x >= y) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (double x : xs) out.push_back({x, y});
  }
  return out;
}

std::string point_name(double x, double y) {
  std::ostringstream os;
  os.precision(17);
  os << "(x=" << x << ", y=" << y << ")";
  return os.str();
}

std::uint64_t count_with_cross_check(double x, double y, const PrimeTable& pt, bool cross,
                                     std::uint64_t& cross_done) {
  constexpr double kSieveCut = 1e7;
  const bool sieve_first = x <= kSieveCut;
  const std::uint64_t phi = sieve_first ? phi_sieve(x, y, pt) : phi_legendre(x, y, pt);
  if (cross) {
    const std::uint64_t other = sieve_first ? phi_legendre(x, y, pt) : phi_sieve(x, y, pt);
    if (other != phi)
      throw std::runtime_error("counting paths disagree at " + point_name(x, y) + ": " +
                               std::to_string(phi) + " vs " + std::to_string(other));
    ++cross_done;
  }
  return phi;
}

// Samples used by the closed-form assembly checks on a y range.
std::vector<double> dense_linear(double lo, double hi, double step) {
  std::vector<double> v;
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  for (std::size_t i = 0; i <= n; ++i) v.push_back(std::min(hi, lo + step * static_cast<double>(i)));
  return v;
}

std::vector<double> dense_log(double lo, double hi, double ratio) {
  std::vector<double> v;
  for (double y = lo; y < hi; y *= ratio) v.push_back(y);
  v.push_back(hi);
  return v;
}

}  // namespace

const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::main: return "main";
    case TheoremId::corollary: return "corollary";
    case TheoremId::lower: return "lower";
    case TheoremId::sandwich: return "sandwich";
    case TheoremId::prop21: return "prop21";
    case TheoremId::assembly: return "assembly";
  }
  return "?";
}

TheoremId theorem_from_string(const std::string& s) {
  for (auto id : {TheoremId::main, TheoremId::corollary, TheoremId::lower, TheoremId::sandwich,
                  TheoremId::prop21, TheoremId::assembly})
    if (s == to_string(id)) return id;
  throw std::invalid_argument("unknown theorem '" + s +
                              "' (main|corollary|lower|sandwich|prop21|assembly)");
}

GridSpec GridSpec::default_grid(std::uint64_t x_cap) {
  GridSpec g;
  g.x_cap = x_cap;
  for (int i = 0; i < 60; ++i) g.y_values.push_back(2.0 * std::pow(3163.0 / 2.0, i / 59.0));
  g.y_values.back() = 3163.0;
  for (int i = 0; i < 40; ++i) g.u_values.push_back(1.05 + (9.0 - 1.05) * i / 39.0);
  return g;
}

GridSpec GridSpec::prop21_grid(const PrimeTable& pt, std::uint64_t x_cap) {
  GridSpec g;
  g.x_cap = x_cap;
  const auto primes = pt.primes();
  const auto first = std::lower_bound(primes.begin(), primes.end(), 602u);
  const auto last = std::upper_bound(primes.begin(), primes.end(), 5000u);
  for (auto i = first - primes.begin(); i < last - primes.begin(); i += 12)
    g.y_values.push_back(primes[i]);
  for (int i = 0; i <= 100; ++i) g.u_values.push_back(2.0 + 0.02 * i);
  return g;
}

void GridSpec::validate() const {
  if (y_values.empty() || u_values.empty()) throw std::invalid_argument("GridSpec: empty grid");
  for (double y : y_values)
    if (!(y >= 2.0) || !std::isfinite(y)) throw std::invalid_argument("GridSpec: y must be >= 2");
  for (double u : u_values)
    if (!(u >= 1.0) || !std::isfinite(u)) throw std::invalid_argument("GridSpec: u must be >= 1");
  if (x_cap < 2) throw std::invalid_argument("GridSpec: x_cap must be >= 2");
}

void to_json(nlohmann::json& j, const GridSpec& g) {
  j = {{"y_values", g.y_values},
       {"u_values", g.u_values},
       {"x_cap", g.x_cap},
       {"exhaustive_x", g.exhaustive_x}};
}

void from_json(const nlohmann::json& j, GridSpec& g) {
  j.at("y_values").get_to(g.y_values);
  j.at("u_values").get_to(g.u_values);
  j.at("x_cap").get_to(g.x_cap);
  j.at("exhaustive_x").get_to(g.exhaustive_x);
}

ReportBuilder::ReportBuilder(std::string theorem_id, std::string mode, std::string label) {
  report_.theorem_id = std::move(theorem_id);
  report_.mode = std::move(mode);
  report_.label = std::move(label);
  report_.min_margin = std::numeric_limits<double>::infinity();
}

void ReportBuilder::record(const std::string& check, double x, double y, double lhs, double rhs,
                           double margin) {
  auto& r = report_;
  ++r.points_checked;
  auto it = std::find_if(r.checks.begin(), r.checks.end(),
                         [&](const CheckSummary& c) { return c.name == check; });
  if (it == r.checks.end()) {
    r.checks.push_back({check, 0, std::numeric_limits<double>::infinity()});
    it = r.checks.end() - 1;
  }
  ++it->points;
  it->min_margin = std::min(it->min_margin, margin);
  PointRecord rec{check, x, y, lhs, rhs, margin};
  // NaN margins count as violations.
  if (!(margin > 0.0)) {
    r.violations.push_back(rec);
  } else if (margin < kInconclusiveRel * std::abs(rhs)) {
    r.inconclusive.push_back(rec);
  }
  if (!r.worst || !(margin >= r.worst->margin)) r.worst = rec;
  if (!(margin >= r.min_margin)) r.min_margin = margin;
}

void ReportBuilder::tally(const std::string& check, std::uint64_t n) {
  auto it = std::find_if(report_.checks.begin(), report_.checks.end(),
                         [&](const CheckSummary& c) { return c.name == check; });
  if (it == report_.checks.end()) {
    report_.checks.push_back({check, 0, std::numeric_limits<double>::infinity()});
    it = report_.checks.end() - 1;
  }
  it->points += n;
  report_.points_checked += n;
}

VerificationReport ReportBuilder::finish(double runtime_seconds) {
  report_.runtime_seconds = runtime_seconds;
  return std::move(report_);
}

GridEvaluation evaluate_grid(const GridSpec& grid, const PrimeTable& pt,
                             const SpecialTables& tables, const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  grid.validate();
  if (grid.x_cap > pt.limit())
    throw SieveRangeError("evaluate_grid: x_cap " + std::to_string(grid.x_cap) +
                          " exceeds the prime table limit " + std::to_string(pt.limit()));
  GridEvaluation ev;
  ev.grid = grid;
  const std::vector<Sample> samples = grid_samples(grid);
  ev.points.resize(samples.size());
  std::vector<std::uint64_t> crossed(samples.size(), 0);
  const std::uint32_t stride = std::max<std::uint32_t>(1, opt.cross_check_stride);
  parallel_for(samples.size(), opt.workers, [&](std::size_t i) {
    const auto [x, y] = samples[i];
    try {
      GridPoint p;
      p.x = x;
      p.y = y;
      p.phi = count_with_cross_check(x, y, pt, i % stride == 0, crossed[i]);
      const MainTermBreakdown m = main_term(x, y, pt, tables.omega);
      p.u = m.u;
      p.main_term = m.main_term;
      p.mu_x = m.mu * x;
      if (p.u <= 2.0) p.li_diff = x > y ? log_integral(x) - log_integral(y) : 0.0;
      ev.points[i] = p;
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string(e.what()) + " [at " + point_name(x, y) + "]");
    }
  });
  for (auto c : crossed) ev.cross_checks += c;
  ev.runtime_seconds = seconds_since(t0);
  return ev;
}

VerificationReport check_main_theorem(const GridEvaluation& ev, Mode mode) {
  const auto t0 = Clock::now();
  ReportBuilder b("main", to_string(mode), rh_label(mode));
  for (const auto& p : ev.points) {
    const double diff = std::abs(static_cast<double>(p.phi) - p.main_term);
    if (mode == Mode::unconditional) {
      b.upper("main", p.x, p.y, diff, kMainUnconditional * unconditional_envelope(p.x, p.y));
    } else if (p.y >= kRhMinY) {
      b.upper("main", p.x, p.y, diff, kMainRh * rh_envelope(p.x, p.y));
    }
  }
  b.report().grid = ev.grid;
  b.report().cross_checks = ev.cross_checks;
  return b.finish(ev.runtime_seconds + seconds_since(t0));
}

VerificationReport check_corollary(const GridEvaluation& ev, Mode mode) {
  const auto t0 = Clock::now();
  ReportBuilder b("corollary", to_string(mode), rh_label(mode));
  for (const auto& p : ev.points) {
    if (mode == Mode::rh && p.y < kRhMinY) continue;
    const double rhs = mode == Mode::unconditional
                           ? kCorollaryUnconditional * unconditional_envelope(p.x, p.y)
                           : kCorollaryRh * rh_envelope(p.x, p.y);
    const double phi = static_cast<double>(p.phi);
    b.upper("corollary", p.x, p.y, std::abs(phi - p.mu_x), rhs);
    if (p.u <= 2.0) b.upper("corollary_li_form", p.x, p.y, std::abs(phi - p.li_diff), rhs);
  }
  b.report().grid = ev.grid;
  b.report().cross_checks = ev.cross_checks;
  return b.finish(ev.runtime_seconds + seconds_since(t0));
}

VerificationReport check_sandwich(const GridEvaluation& ev) {
  const auto t0 = Clock::now();
  ReportBuilder b("sandwich", "unconditional");
  for (const auto& p : ev.points) {
    const double phi = static_cast<double>(p.phi);
    const double base = p.x / std::log(p.y);
    b.upper("phi_below_x_over_log_y", p.x, p.y, phi, base);
    if (p.y >= 3.0 && p.y * p.y <= p.x) b.upper("phi_below_0.6x_over_log_y", p.x, p.y, phi, 0.6 * base);
  }
  b.report().grid = ev.grid;
  b.report().cross_checks = ev.cross_checks;
  return b.finish(ev.runtime_seconds + seconds_since(t0));
}

VerificationReport verify_main_theorem(const GridSpec& grid, Mode mode, const PrimeTable& pt,
                                       const SpecialTables& tables, const VerifyOptions& opt) {
  return check_main_theorem(evaluate_grid(grid, pt, tables, opt), mode);
}

VerificationReport verify_corollary(const GridSpec& grid, Mode mode, const PrimeTable& pt,
                                    const SpecialTables& tables, const VerifyOptions& opt) {
  return check_corollary(evaluate_grid(grid, pt, tables, opt), mode);
}

VerificationReport verify_sandwich(const GridSpec& grid, const PrimeTable& pt,
                                   const SpecialTables& tables, const VerifyOptions& opt) {
  return check_sandwich(evaluate_grid(grid, pt, tables, opt));
}

VerificationReport verify_prop21_pointwise(const GridSpec& grid, const PrimeTable& pt,
                                           const SpecialTables& tables, const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  grid.validate();
  if (grid.x_cap > pt.limit())
    throw SieveRangeError("verify_prop21_pointwise: x_cap exceeds the prime table limit");
  std::vector<Sample> samples;
  for (const Sample& s : grid_samples(grid))
    if (s.y >= kSmallYFloor && std::log(s.x) >= 2.0 * std::log(s.y)) samples.push_back(s);
  std::vector<std::uint64_t> phis(samples.size()), crossed(samples.size(), 0);
  const std::uint32_t stride = std::max<std::uint32_t>(1, opt.cross_check_stride);
  parallel_for(samples.size(), opt.workers, [&](std::size_t i) {
    phis[i] = count_with_cross_check(samples[i].x, samples[i].y, pt, i % stride == 0, crossed[i]);
  });
  ReportBuilder b("prop21", "unconditional");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [x, y] = samples[i];
    const double L = std::log(y), u = std::log(x) / L;
    const double delta = (static_cast<double>(phis[i]) * L / x - buchstab_omega(u, tables.omega)) * L;
    if (u < 3.0) b.lower("u_in_[2,3)", x, y, delta, kDeltaFloor3);
    else if (u < 4.0) b.lower("u_in_[3,4)", x, y, delta, kDeltaFloor4);
    else b.lower("u_at_least_4", x, y, delta, kDeltaFloorInf);
  }
  for (auto c : crossed) b.report().cross_checks += c;
  b.report().grid = grid;
  return b.finish(seconds_since(t0));
}

AssemblyConstants assembly_constants(const PrimeTable& pt) {
  if (pt.limit() < 100'000'000)
    throw SieveRangeError("assembly_constants: needs primes up to 1e8");
  AssemblyConstants out{};
  const auto primes = pt.primes();

  // M: on [p_i, p_{i+1}) pi is constant, so scan each gap including its
  // left limit at p_{i+1}, then refine around the best sample.
  auto ratio = [](double z, double pi_z) {
    return (log_integral(z) - pi_z) / (std::sqrt(z) * std::log(z));
  };
  out.M = -std::numeric_limits<double>::infinity();
  double best_lo = 11.0, best_hi = 11.0, best_pi = 0.0;
  for (std::size_t i = 4; i < primes.size() && primes[i] <= 2657; ++i) {
    const double lo = primes[i], pi_z = static_cast<double>(i + 1);
    const double hi = primes[i] == 2657 ? lo : static_cast<double>(primes[i + 1]);
    constexpr int kSteps = 16;
    for (int s = 0; s <= kSteps; ++s) {
      const double z = lo + (hi - lo) * s / kSteps;
      const double v = ratio(z, pi_z);
      if (v > out.M) {
        out.M = v;
        out.M_at = z;
        best_lo = std::max(lo, z - (hi - lo) / kSteps);
        best_hi = std::min(hi, z + (hi - lo) / kSteps);
        best_pi = pi_z;
      }
    }
  }
  if (best_hi > best_lo) {
    const Extremum e =
        golden_minimize([&](double z) { return -ratio(z, best_pi); }, best_lo, best_hi, 1e-9);
    if (-e.value > out.M) {
      out.M = -e.value;
      out.M_at = e.x;
    }
  }

  // m and the windows: Q is constant between primes while log z grows, so
  // minima sit at window starts and at primes.
  struct Window {
    double lo, hi;
    bool hi_open;
  };
  const std::array<Window, 4> windows = {{{11.0, 2657.0, false},
                                          {229.0, 2657.0, false},
                                          {2657.0, 210000.0, true},
                                          {210000.0, 1e8, false}}};
  std::array<double, 4> mins, at;
  mins.fill(std::numeric_limits<double>::infinity());
  at.fill(0.0);
  CompensatedSum log_q;
  auto consider = [&](double z, double lq) {
    const double v = kExpGamma * std::log(z) * std::exp(lq);
    for (std::size_t w = 0; w < windows.size(); ++w) {
      const auto& win = windows[w];
      const bool inside = z >= win.lo && (win.hi_open ? z < win.hi : z <= win.hi);
      if (inside && v < mins[w]) {
        mins[w] = v;
        at[w] = z;
      }
    }
  };
  std::size_t wi = 0;
  std::array<double, 4> starts = {11.0, 229.0, 2657.0, 210000.0};
  for (std::size_t i = 0; i < primes.size() && primes[i] <= 100'000'000u; ++i) {
    const double p = primes[i];
    // Window starts falling strictly inside this gap use the product so far.
    while (wi < starts.size() && starts[wi] < p) consider(starts[wi++], log_q.value());
    log_q += std::log1p(-1.0 / p);
    if (wi < starts.size() && starts[wi] == p) ++wi;
    consider(p, log_q.value());
  }
  out.m = mins[0];
  out.m_at = at[0];
  for (int w = 0; w < 3; ++w) {
    out.window_min[w] = mins[w + 1];
    out.window_at[w] = at[w + 1];
  }
  return out;
}

VerificationReport verify_final_assembly(const PrimeTable& pt, const SpecialTables& tables) {
  (void)tables;
  const auto t0 = Clock::now();
  ReportBuilder b("assembly", "both");
  const AssemblyConstants ac = assembly_constants(pt);
  b.upper("M", ac.M_at, 0.0, ac.M, kBigM);
  b.lower("m", ac.m_at, 0.0, ac.m, kSmallM);
  b.lower("m_window_[229,2657]", ac.window_at[0], 0.0, ac.window_min[0], kWindowFloor229);
  b.lower("m_window_[2657,210000)", ac.window_at[1], 0.0, ac.window_min[1], kWindowFloor2657);
  b.lower("m_window_[210000,1e8]", ac.window_at[2], 0.0, ac.window_min[2], kWindowFloor210000);

  const double m0 = omega_global_maximum().value;
  const ConstantLedger unc229 = compute_ledger(ApproxContext::make(Mode::unconditional, 229.0));
  const ConstantLedger unc1e8 = compute_ledger(ApproxContext::make(Mode::unconditional, 1e8));
  const ConstantLedger rh2657 = compute_ledger(ApproxContext::make(Mode::rh, 2657.0));
  const ConstantLedger rh1e8 = compute_ledger(ApproxContext::make(Mode::rh, 1e8));
  auto q_spread = [](const ConstantLedger& l) { return std::max(l.C[5], l.C[6]); };
  auto unc_shape = [](double y) {
    const double L = std::log(y);
    return std::pow(L, -0.75) * std::exp(-std::sqrt(L / 6.315));
  };
  auto rh_shape = [](double y) { return std::log(y) / std::sqrt(y); };

  // Theorem, unconditional: y >= 229 from C8(229) R(y) / log y; below 229
  // from the trivial 2x / log y.
  b.upper("unc_theorem_constant", 0.0, 229.0, unc229.C[8] * 0.2593, kMainUnconditional);
  for (double y : dense_linear(2.0, 229.0, 0.01))
    b.upper("unc_theorem_small_y", 0.0, y, 2.0 / std::log(y), kMainUnconditional * unc_shape(y));
  // Theorem, RH: y >= 2657 from C8(2657); 11 <= y <= 2657 by the case split.
  b.upper("rh_theorem_constant", 0.0, 2657.0, rh2657.C[8] / (8.0 * std::numbers::pi), kMainRh);
  for (double y : dense_linear(11.0, 2657.0, 0.01)) {
    const double L = std::log(y), s = rh_shape(y) * L;  // log^2 y / sqrt y
    b.upper("rh_theorem_u_le_2", 0.0, y, (1.0 - kSmallM) * (1.0 - 1.0 / y) + kBigM * s + L / y,
            kMainRh * s);
    b.upper("rh_theorem_u_ge_2_upper", 0.0, y, 0.6 - kSmallM / 2.0 * (1.0 - 1.0 / y), kMainRh * s);
    b.lower("rh_theorem_u_ge_2_lower", 0.0, y, 0.4 - m0, -kMainRh * s);
  }

  // Corollary, unconditional.
  // Each m(y) window is scanned on its closed range with its own floor, so
  // the shared endpoints are covered by both.
  struct MWindow {
    double lo, hi, floor;
  };
  const std::array<MWindow, 3> m_windows = {{{229.0, 2657.0, kWindowFloor229},
                                             {2657.0, 210000.0, kWindowFloor2657},
                                             {210000.0, 1e8, kWindowFloor210000}}};
  for (const auto& w : m_windows)
    for (double y : dense_log(w.lo, w.hi, 1.0001))
      b.upper("unc_corollary_window", 0.0, y, (unc229.C[8] * r_unconditional(y) + 1.0 - w.floor) / std::log(y),
              kCorollaryUnconditional * unc_shape(y));
  b.upper("unc_corollary_large_y", 0.0, 1e8, (unc1e8.C[8] + q_spread(unc1e8)) * 0.2593,
          kCorollaryUnconditional);
  for (double y : dense_linear(2.0, 229.0, 0.01))
    b.upper("unc_corollary_small_y", 0.0, y, 2.0 / std::log(y), kCorollaryUnconditional * unc_shape(y));
  // Corollary, RH.
  for (const auto& w : m_windows) {
    if (w.hi <= 2657.0) continue;
    for (double y : dense_log(w.lo, w.hi, 1.0001))
      b.upper("rh_corollary_window", 0.0, y, (rh2657.C[8] * r_rh(y) + 1.0 - w.floor) / std::log(y),
              kCorollaryRh * rh_shape(y));
  }
  b.upper("rh_corollary_large_y", 0.0, 1e8,
          (rh1e8.C[8] + q_spread(rh1e8)) / (8.0 * std::numbers::pi), kCorollaryRh);
  for (double y : dense_linear(11.0, 2657.0, 0.01)) {
    const double L = std::log(y), s = rh_shape(y) * L;
    b.upper("rh_corollary_u_le_2", 0.0, y, kBigM * s + L / y, kCorollaryRh * s);
    b.upper("rh_corollary_u_ge_2_upper", 0.0, y, 0.6 - 0.5 * (1.0 - 1.0 / y), kCorollaryRh * s);
    b.lower("rh_corollary_u_ge_2_lower", 0.0, y, 0.4 - m0, -kCorollaryRh * s);
  }
  return b.finish(seconds_since(t0));
}

}  // namespace roughcount
