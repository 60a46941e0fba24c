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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "roughcount/constants.hpp"
#include "roughcount/sieve.hpp"
#include "roughcount/specfun.hpp"

namespace roughcount {

// Published constants of the inequalities under test.
inline constexpr double kMainUnconditional = 4.403611;
inline constexpr double kMainRh = 0.449774;
inline constexpr double kCorollaryUnconditional = 4.434084;
inline constexpr double kCorollaryRh = 0.460680;
inline constexpr double kLowerConstant = 0.4;
inline constexpr double kRhMinY = 11.0;

// Delta floors by u band: [2,3), [3,4), [4,inf).
inline constexpr double kDeltaFloor3 = -0.563528;
inline constexpr double kDeltaFloor4 = -0.887161;
inline constexpr double kDeltaFloorInf = -0.955421;

// Final-assembly constants.
inline constexpr double kBigM = 0.259141;
inline constexpr double kSmallM = 0.876248;
inline constexpr double kWindowFloor229 = 0.983296;
inline constexpr double kWindowFloor2657 = 0.996426;
inline constexpr double kWindowFloor210000 = 0.999643;

enum class TheoremId { main, corollary, lower, sandwich, prop21, assembly };

const char* to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& s);

struct GridSpec {
  std::vector<double> y_values;
  std::vector<double> u_values;
  std::uint64_t x_cap = 100'000'000;
  bool exhaustive_x = false;

  // 60 log-spaced y in [2, 3163], 40 equally spaced u in [1.05, 9].
  static GridSpec default_grid(std::uint64_t x_cap = 100'000'000);
  // Every 12th prime in [602, 5000], u from 2 in steps of 0.02.
  static GridSpec prop21_grid(const PrimeTable& pt, std::uint64_t x_cap = 1'000'000'000);
  void validate() const;
};

void to_json(nlohmann::json& j, const GridSpec& g);
void from_json(const nlohmann::json& j, GridSpec& g);

struct PointRecord {
  std::string check;
  double x = 0.0;
  double y = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

struct CheckSummary {
  std::string name;
  std::uint64_t points = 0;
  double min_margin = 0.0;
};

// margin = (allowed side) - (tested side); a check passes iff margin > 0.
struct VerificationReport {
  std::string theorem_id;
  std::string mode;
  std::string label;
  nlohmann::json grid;
  std::uint64_t points_checked = 0;
  std::uint64_t cross_checks = 0;
  double min_margin = 0.0;
  std::optional<PointRecord> worst;
  std::vector<PointRecord> violations;
  std::vector<PointRecord> inconclusive;
  std::vector<CheckSummary> checks;
  double runtime_seconds = 0.0;

  bool ok() const { return violations.empty(); }
};

// Accumulates checks in a fixed order; the result does not depend on how the
// points were produced.
class ReportBuilder {
 public:
  ReportBuilder(std::string theorem_id, std::string mode, std::string label = {});
  void record(const std::string& check, double x, double y, double lhs, double rhs,
              double margin);
  // lhs < rhs, margin = rhs - lhs.
  void upper(const std::string& check, double x, double y, double lhs, double rhs) {
    record(check, x, y, lhs, rhs, rhs - lhs);
  }
  // lhs > rhs, margin = lhs - rhs.
  void lower(const std::string& check, double x, double y, double lhs, double rhs) {
    record(check, x, y, lhs, rhs, lhs - rhs);
  }
  // Counts n passing points of `check` whose margins were all >= min_margin
  // without storing them; the caller records the worst one separately.
  void tally(const std::string& check, std::uint64_t n);
  VerificationReport& report() { return report_; }
  VerificationReport finish(double runtime_seconds);

 private:
  VerificationReport report_;
};

struct VerifyOptions {
  unsigned workers = 1;
  // Every n-th exact count is recomputed by the other algorithm.
  std::uint32_t cross_check_stride = 100;
};

// Exact and smooth quantities at one sampled x.
struct GridPoint {
  double x = 0.0;
  double y = 0.0;
  double u = 0.0;
  std::uint64_t phi = 0;
  double main_term = 0.0;  // mu e^gamma x log y Q(y)
  double mu_x = 0.0;       // mu_y(u) x
  double li_diff = 0.0;    // li(x) - li(y) when u <= 2, else 0
};

struct GridEvaluation {
  GridSpec grid;
  std::vector<GridPoint> points;
  std::uint64_t cross_checks = 0;
  double runtime_seconds = 0.0;
};

// For each (y, u) with x = y^u <= x_cap, samples x, floor(x), and
// floor(x)(1 - 2^-20) (just below a possible step); every y also gets x = y.
// Throws std::runtime_error naming the point if the two counting algorithms
// disagree, or if x_cap exceeds the prime table.
GridEvaluation evaluate_grid(const GridSpec& grid, const PrimeTable& pt,
                             const SpecialTables& tables, const VerifyOptions& opt = {});

VerificationReport check_main_theorem(const GridEvaluation& ev, Mode mode);
VerificationReport check_corollary(const GridEvaluation& ev, Mode mode);
VerificationReport check_sandwich(const GridEvaluation& ev);

VerificationReport verify_main_theorem(const GridSpec& grid, Mode mode, const PrimeTable& pt,
                                       const SpecialTables& tables, const VerifyOptions& opt = {});
VerificationReport verify_corollary(const GridSpec& grid, Mode mode, const PrimeTable& pt,
                                    const SpecialTables& tables, const VerifyOptions& opt = {});
VerificationReport verify_sandwich(const GridSpec& grid, const PrimeTable& pt,
                                   const SpecialTables& tables, const VerifyOptions& opt = {});

// Delta(x, y) = (Phi log y / x - omega(u)) log y against the band floors,
// for y >= 602 and u >= 2.
VerificationReport verify_prop21_pointwise(const GridSpec& grid, const PrimeTable& pt,
                                           const SpecialTables& tables,
                                           const VerifyOptions& opt = {});

// Phi(x, y) > 0.4 x / log y at every step of Phi, for all primes
// 7 <= y <= x^{2/3} and x <= x_cap, then y = 5 with x >= 41. A real y shares
// its count with the prime below it and has a smaller bound, so primes are
// the worst case; within a step the worst x is the left limit at the next
// rough number.
VerificationReport verify_lower_04(std::uint64_t x_cap, const VerifyOptions& opt = {});

// Recomputes M, m, and the m(y) window minima and checks the case analysis
// that turns the constant table into the published theorem constants.
// Needs primes up to 1e8.
VerificationReport verify_final_assembly(const PrimeTable& pt, const SpecialTables& tables);

struct AssemblyConstants {
  double M;
  double M_at;
  double m;
  double m_at;
  std::array<double, 3> window_min;
  std::array<double, 3> window_at;
};
AssemblyConstants assembly_constants(const PrimeTable& pt);

}  // namespace roughcount
