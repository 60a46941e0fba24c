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
#include <list>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace roughcount {

// Sorted primes up to `limit` with block checkpoints for pi(z).
class PrimeTable {
 public:
  static constexpr unsigned kBlockBits = 16;

  PrimeTable(std::uint64_t limit, std::vector<std::uint32_t> primes);

  std::uint64_t limit() const { return limit_; }
  std::span<const std::uint32_t> primes() const { return primes_; }
  std::span<const std::uint32_t> checkpoints() const { return checkpoints_; }
  std::size_t size() const { return primes_.size(); }
  std::uint32_t operator[](std::size_t i) const { return primes_[i]; }

  // pi(z); z beyond limit throws std::out_of_range.
  std::uint64_t pi(std::uint64_t z) const;
  // pi(floor(z)) for real z.
  std::uint64_t pi(double z) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
  std::vector<std::uint32_t> checkpoints_;
};

// Segmented sieve of Eratosthenes over odd numbers. 2 <= n < 2^32.
PrimeTable primes_up_to(std::uint64_t n);

struct RoughCountQuery {
  double x;
  double y;
  double u() const;
};

enum class PhiMethod { automatic, sieve, legendre };

// Raised when the Legendre recursion exceeds its call budget.
class PhiBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a count needs primes or pi(z) beyond the table limit.
class SieveRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct LegendreBudget {
  std::size_t memo_bytes = std::size_t{32} << 20;
  std::uint64_t max_calls = std::uint64_t{1} << 36;
};

// phi(x, a): integers in [1, x] free of the first a primes, by the recursion
// phi(x, a) = phi(x, a-1) - phi(x / p_a, a-1). Uses primorial tables for
// a <= 6, pi(x) once p_{a+1}^2 > x, and an LRU memo bounded in bytes.
// Not thread-safe; use one instance per worker.
class LegendrePhi {
 public:
  explicit LegendrePhi(const PrimeTable& pt, LegendreBudget budget = {});

  std::uint64_t operator()(std::uint64_t x, std::size_t a);
  std::uint64_t calls() const { return calls_; }
  std::size_t memo_entries() const { return lru_.size(); }

 private:
  static constexpr std::size_t kSmallA = 6;
  std::uint64_t phi(std::uint64_t x, std::size_t a);
  std::uint64_t phi_small(std::uint64_t x, std::size_t a) const;
  bool memo_lookup(std::uint64_t key, std::uint64_t& value);
  void memo_store(std::uint64_t key, std::uint64_t value);

  const PrimeTable& pt_;
  LegendreBudget budget_;
  std::uint64_t calls_ = 0;
  std::size_t memo_capacity_;
  // prefix[a][r] = #{1 <= n <= r : n free of the first a primes}, r < P_a.
  std::vector<std::vector<std::uint32_t>> small_prefix_;
  std::vector<std::uint64_t> primorial_;
  using LruList = std::list<std::pair<std::uint64_t, std::uint64_t>>;
  LruList lru_;
  std::unordered_map<std::uint64_t, LruList::iterator> index_;
};

// Path (a): segmented enumeration with a mod-30 wheel. Needs floor(x) <= limit.
std::uint64_t phi_sieve(double x, double y, const PrimeTable& pt);
// Path (b): Legendre recursion. Needs floor(x) <= limit.
std::uint64_t phi_legendre(double x, double y, const PrimeTable& pt, LegendreBudget budget = {});
// Phi(x, y) = #{n <= x : least prime factor of n > y}. `automatic` uses the
// sieve for x <= 1e7 and the recursion above that.
std::uint64_t phi_exact(const RoughCountQuery& q, const PrimeTable& pt,
                        PhiMethod method = PhiMethod::automatic);

// Q(y) = prod_{p <= y} (1 - 1/p), summed in log space.
double mertens_product(double y, const PrimeTable& pt);

// Sum of 1/p over primes in (lo, hi].
double reciprocal_prime_sum(double lo, double hi, const PrimeTable& pt);

// Truncated inclusion-exclusion over primes in (5, y] after pre-sieving by
// 2, 3, 5: Phi(x, y) >= a x - b. threshold = b / (a - 0.4 / log y), or +inf.
struct BonferroniBounds {
  double a;
  double b;
  double threshold;
};
BonferroniBounds bonferroni_bounds(double y, const PrimeTable& pt);

struct BonferroniMaximum {
  double y;
  double threshold;
};
// Largest threshold over 7 <= y <= 602. Within a prime gap a and b are
// constant and the threshold decreases in y, so primes are the candidates.
BonferroniMaximum bonferroni_max_threshold(const PrimeTable& pt);

}  // namespace roughcount
