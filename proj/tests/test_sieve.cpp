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
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "roughcount/numerics.hpp"
#include "roughcount/sieve.hpp"

using namespace roughcount;
using doctest::Approx;

namespace {

const PrimeTable& small_table() {
  static const PrimeTable pt = primes_up_to(10'000'000);
  return pt;
}

}  // namespace

TEST_CASE("primes_up_to against trial division and a plain sieve") {
  const PrimeTable p10 = primes_up_to(10);
  CHECK(std::vector<std::uint32_t>(p10.primes().begin(), p10.primes().end()) ==
        std::vector<std::uint32_t>{2, 3, 5, 7});
  CHECK(p10.pi(std::uint64_t{10}) == 4);
  const PrimeTable p1000 = primes_up_to(1000);
  CHECK(p1000.pi(std::uint64_t{100}) == oracle::primes_trial(100).size());
  CHECK(p1000.pi(std::uint64_t{100}) == 25);
  CHECK(p1000.pi(std::uint64_t{1000}) == oracle::primes_trial(1000).size());
  CHECK(p1000.pi(std::uint64_t{1000}) == 168);
  for (std::uint32_t n : {2u, 3u, 4u, 65535u, 65536u, 65537u, 1'000'003u}) {
    const PrimeTable pt = primes_up_to(n);
    const auto ref = oracle::primes_plain_sieve(n);
    REQUIRE(pt.size() == ref.size());
    CHECK(std::equal(ref.begin(), ref.end(), pt.primes().begin()));
    CHECK(pt.pi(static_cast<std::uint64_t>(n)) == ref.size());
  }
  CHECK_THROWS_AS(primes_up_to(1), std::invalid_argument);
  CHECK_THROWS_AS(primes_up_to(std::uint64_t{1} << 32), std::invalid_argument);
}

TEST_CASE("pi lookups") {
  const PrimeTable& pt = small_table();
  const auto ref = oracle::primes_plain_sieve(200'000);
  std::size_t k = 0;
  for (std::uint64_t z = 0; z <= 200'000; ++z) {
    while (k < ref.size() && ref[k] <= z) ++k;
    if (pt.pi(z) != k) {
      FAIL("pi mismatch at " << z);
      break;
    }
  }
  CHECK(pt.pi(10.9) == 4);
  CHECK(pt.pi(1.5) == 0);
  CHECK(pt.pi(std::uint64_t{10'000'000}) == 664579);
  CHECK_THROWS_AS(pt.pi(std::uint64_t{10'000'001}), SieveRangeError);
}

TEST_CASE("phi_exact examples against brute force") {
  const PrimeTable& pt = small_table();
  for (auto m : {PhiMethod::sieve, PhiMethod::legendre, PhiMethod::automatic}) {
    CHECK(phi_exact({10, 2}, pt, m) == oracle::phi_brute(10, 2));
    CHECK(phi_exact({10, 2}, pt, m) == 5);
    CHECK(phi_exact({100, 7}, pt, m) == oracle::phi_brute(100, 7));
    CHECK(phi_exact({100, 7}, pt, m) == 22);
    CHECK(phi_exact({100, 10}, pt, m) == pt.pi(100.0) - pt.pi(10.0) + 1);
    CHECK(phi_exact({1000, 10}, pt, m) == oracle::phi_brute(1000, 10));
    CHECK(phi_exact({1000, 10}, pt, m) == 228);
    CHECK(phi_exact({49, 7}, pt, m) == oracle::phi_brute(49, 7));
    CHECK(phi_exact({99.9, 3.5}, pt, m) == oracle::phi_brute(99.9, 3.5));
  }
  CHECK_THROWS_AS(phi_exact({0.5, 2}, pt), std::invalid_argument);
  CHECK_THROWS_AS(phi_exact({10, 1}, pt), std::invalid_argument);
  CHECK_THROWS_AS(phi_sieve(2e7, 10, pt), SieveRangeError);
}

TEST_CASE("brute force agreement on small x") {
  const PrimeTable& pt = small_table();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const double x = std::uniform_real_distribution<double>(1.0, 20000.0)(rng);
    const double y = std::uniform_real_distribution<double>(1.01, x + 5.0)(rng);
    const auto ref = oracle::phi_brute(x, y);
    CHECK(phi_sieve(x, y, pt) == ref);
    CHECK(phi_legendre(x, y, pt) == ref);
  }
}

TEST_CASE("dual-path agreement on 500 random points up to 1e7") {
  const PrimeTable& pt = small_table();
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double x = std::pow(10.0, 1.0 + 6.0 * unit(rng));
    const double y = std::exp(std::log(2.0) + (std::log(x) - std::log(2.0)) * unit(rng));
    const auto a = phi_sieve(x, y, pt);
    const auto b = phi_legendre(x, y, pt);
    if (a != b) FAIL_CHECK("paths disagree at x=" << x << " y=" << y << ": " << a << " vs " << b);
  }
}

TEST_CASE("inclusion-exclusion identity for y <= 30") {
  const PrimeTable& pt = small_table();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto x = std::uniform_int_distribution<std::uint64_t>(1, 100'000)(rng);
    const double y = std::uniform_real_distribution<double>(1.5, 30.0)(rng);
    const auto primes = oracle::primes_trial(static_cast<std::uint32_t>(y));
    CHECK(static_cast<std::int64_t>(phi_exact({static_cast<double>(x), y}, pt)) ==
          oracle::phi_inclusion_exclusion(x, primes));
  }
}

TEST_CASE("Buchstab identity with p- meaning least prime factor >= p") {
  const PrimeTable& pt = small_table();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 60; ++i) {
    const double x = std::uniform_real_distribution<double>(10.0, 1e6)(rng);
    const double y = std::uniform_real_distribution<double>(2.0, std::sqrt(x) + 2)(rng);
    const double z = std::uniform_real_distribution<double>(y, x)(rng);
    std::uint64_t rhs = phi_exact({x, z}, pt);
    for (std::uint64_t k = pt.pi(y); k < pt.pi(z); ++k) {
      const double p = pt[k];
      // Phi(x/p, p-) counts m <= x/p with no prime factor below p.
      rhs += phi_legendre(x / p, p - 0.5, pt);
    }
    CHECK(phi_exact({x, y}, pt) == rhs);
  }
}

TEST_CASE("monotonicity and the sandwich bounds") {
  const PrimeTable& pt = small_table();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const double x = std::uniform_real_distribution<double>(2.0, 1e6)(rng);
    const double y = std::uniform_real_distribution<double>(1.5, x)(rng);
    const double dy = std::uniform_real_distribution<double>(0.0, 50.0)(rng);
    const double dx = std::uniform_real_distribution<double>(0.0, 500.0)(rng);
    const auto v = phi_exact({x, y}, pt);
    CHECK(phi_exact({x, y + dy}, pt) <= v);
    CHECK(phi_exact({x + dx, y}, pt) >= v);
    CHECK(static_cast<double>(v) < x / std::log(y));
    if (y >= 3.0 && y * y <= x) CHECK(static_cast<double>(v) < 0.6 * x / std::log(y));
  }
}

TEST_CASE("Mertens product") {
  const PrimeTable& pt = small_table();
  CHECK(mertens_product(2.0, pt) == Approx(0.5).epsilon(1e-15));
  CHECK(mertens_product(10.0, pt) == Approx(8.0 / 35.0).epsilon(1e-14));
  CHECK(mertens_product(1.5, pt) == 1.0);
  // Exact rational product over primes <= 100 accumulated as a double ratio.
  double direct = 1.0;
  for (auto p : oracle::primes_trial(100)) direct *= (p - 1.0) / p;
  CHECK(mertens_product(100.0, pt) == Approx(direct).epsilon(1e-13));
  CHECK(kExpGamma * std::log(1e6) * mertens_product(1e6, pt) < 1.0);
}

TEST_CASE("reciprocal prime sums") {
  const PrimeTable& pt = small_table();
  CHECK(reciprocal_prime_sum(2.0, 3.0, pt) == Approx(1.0 / 3.0).epsilon(1e-15));
  double direct = 0.0;
  for (auto p : oracle::primes_trial(100))
    if (p > 10) direct += 1.0 / p;
  CHECK(reciprocal_prime_sum(10.0, 100.0, pt) == Approx(direct).epsilon(1e-14));
  CHECK(std::abs(direct - 0.6266267) < 1e-7);
  CHECK_THROWS_AS(reciprocal_prime_sum(1.0, 10.0, pt), std::invalid_argument);
}

TEST_CASE("G(v) stays within c1 / log^2 y of log(v/2) for y >= y1") {
  const double y1 = 2278383.0, u = 2.5, L = std::log(y1);
  const double x = std::pow(y1, u);
  const PrimeTable pt = primes_up_to(static_cast<std::uint64_t>(std::sqrt(x)) + 1);
  const double c1 = 0.4 / L;
  for (double v : {2.0, 2.25, 2.5}) {
    const double lo = std::pow(x, 1.0 / v), hi = std::sqrt(x);
    const double g = lo < hi ? reciprocal_prime_sum(lo, hi, pt) : 0.0;
    CHECK(std::abs(g - std::log(v / 2.0)) <= c1 / (L * L));
  }
}

TEST_CASE("Bonferroni bounds") {
  const PrimeTable pt = primes_up_to(1000);
  const BonferroniBounds b7 = bonferroni_bounds(7.0, pt);
  CHECK(b7.a == Approx(8.0 / 35.0).epsilon(1e-14));
  CHECK(b7.b == Approx(28.0 / 15.0).epsilon(1e-14));
  CHECK(b7.threshold == Approx(b7.b / (b7.a - 0.4 / std::log(7.0))).epsilon(1e-14));
  const BonferroniMaximum m = bonferroni_max_threshold(pt);
  CHECK(std::abs(m.threshold / 13160748.0 - 1.0) < 1e-3);
  CHECK_THROWS_AS(bonferroni_bounds(6.0, pt), std::invalid_argument);
  CHECK_THROWS_AS(bonferroni_bounds(603.0, pt), std::invalid_argument);
}

TEST_CASE("Legendre budget is reported distinctly") {
  const PrimeTable& pt = small_table();
  LegendreBudget tiny;
  tiny.max_calls = 10;
  CHECK_THROWS_AS(phi_legendre(1e7, 50.0, pt, tiny), PhiBudgetExceeded);
}
