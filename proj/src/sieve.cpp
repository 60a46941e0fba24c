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

#include "roughcount/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "roughcount/numerics.hpp"

namespace roughcount {
namespace {

constexpr std::uint64_t kSegmentBytes = std::uint64_t{1} << 20;

std::vector<std::uint32_t> simple_sieve(std::uint32_t n) {
  std::vector<char> composite(n + 1, 0);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return out;
}

std::uint64_t floor_count(double x) {
  if (!(x >= 1.0)) return 0;
  if (x >= 18446744073709551615.0) throw SieveRangeError("x too large");
  return static_cast<std::uint64_t>(std::floor(x));
}

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit, std::vector<std::uint32_t> primes)
    : limit_(limit), primes_(std::move(primes)) {
  const std::uint64_t blocks = (limit_ >> kBlockBits) + 2;
  checkpoints_.assign(blocks, 0);
  std::size_t i = 0;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    const std::uint64_t start = b << kBlockBits;
    while (i < primes_.size() && primes_[i] < start) ++i;
    checkpoints_[b] = static_cast<std::uint32_t>(i);
  }
}

std::uint64_t PrimeTable::pi(std::uint64_t z) const {
  if (z < 2) return 0;
  if (z > limit_)
    throw SieveRangeError("pi(" + std::to_string(z) + ") beyond prime table limit " +
                          std::to_string(limit_));
  const std::uint64_t b = z >> kBlockBits;
  const auto first = primes_.begin() + checkpoints_[b];
  const auto last = primes_.begin() + checkpoints_[b + 1];
  return static_cast<std::uint64_t>(std::upper_bound(first, last, z) - primes_.begin());
}

std::uint64_t PrimeTable::pi(double z) const { return pi(floor_count(z)); }

PrimeTable primes_up_to(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("primes_up_to: n must be at least 2");
  if (n > std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("primes_up_to: n must be below 2^32");
  const auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(n))) + 1;
  const std::vector<std::uint32_t> base = simple_sieve(root);

  std::vector<std::uint32_t> primes;
  const double est = static_cast<double>(n) / std::log(static_cast<double>(n));
  primes.reserve(static_cast<std::size_t>(est * 1.15) + 16);
  primes.push_back(2);

  // Byte i of a segment stands for the odd number lo + 2i.
  std::vector<char> seg(kSegmentBytes);
  std::vector<std::uint64_t> next(base.size(), 0);
  for (std::size_t j = 1; j < base.size(); ++j) next[j] = std::uint64_t{base[j]} * base[j];
  for (std::uint64_t lo = 3; lo <= n; lo += 2 * kSegmentBytes) {
    const std::uint64_t hi = std::min<std::uint64_t>(n, lo + 2 * kSegmentBytes - 1);
    const std::uint64_t len = (hi - lo) / 2 + 1;
    std::memset(seg.data(), 1, len);
    for (std::size_t j = 1; j < base.size(); ++j) {
      const std::uint64_t p = base[j];
      std::uint64_t m = next[j];
      if (m > hi) continue;
      for (; m <= hi; m += 2 * p) seg[(m - lo) / 2] = 0;
      next[j] = m;
    }
    for (std::uint64_t i = 0; i < len; ++i)
      if (seg[i]) primes.push_back(static_cast<std::uint32_t>(lo + 2 * i));
  }
  return PrimeTable(n, std::move(primes));
}

double RoughCountQuery::u() const { return std::log(x) / std::log(y); }

std::uint64_t phi_sieve(double x, double y, const PrimeTable& pt) {
  const std::uint64_t X = floor_count(x);
  if (X == 0) return 0;
  if (X > pt.limit())
    throw SieveRangeError("phi_sieve: x beyond prime table limit " + std::to_string(pt.limit()));
  const std::uint64_t a = y < 2.0 ? 0 : pt.pi(std::min(y, static_cast<double>(pt.limit())));
  if (y > static_cast<double>(pt.limit()) && y < x)
    throw SieveRangeError("phi_sieve: y beyond prime table limit");
  if (a == 0) return X;
  if (static_cast<double>(X) <= y) return 1;

  // Wheel from the excluded primes among 2, 3, 5.
  const std::size_t wheel_primes = std::min<std::uint64_t>(a, 3);
  std::uint32_t base = 1;
  for (std::size_t i = 0; i < wheel_primes; ++i) base *= pt[i];
  std::vector<char> keep(base);
  for (std::uint32_t r = 0; r < base; ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < wheel_primes; ++i) ok = ok && (r % pt[i] != 0);
    keep[r] = ok;
  }
  // Segments start at 1 (mod 30) so one pattern serves every segment.
  const std::uint64_t seg_len = 30 * 32768;
  std::vector<char> pattern(seg_len), seg(seg_len);
  for (std::uint64_t i = 0; i < seg_len; ++i) pattern[i] = keep[(1 + i) % base];

  const std::uint64_t step_factor = wheel_primes >= 1 ? 2 : 1;
  std::uint64_t survivors = 0;
  std::vector<std::uint64_t> next(a, 0);
  for (std::size_t j = wheel_primes; j < a; ++j) next[j] = std::uint64_t{pt[j]} * pt[j];
  for (std::uint64_t lo = 1; lo <= X; lo += seg_len) {
    const std::uint64_t hi = std::min(X, lo + seg_len - 1);
    const std::uint64_t len = hi - lo + 1;
    std::memcpy(seg.data(), pattern.data(), len);
    for (std::size_t j = wheel_primes; j < a; ++j) {
      const std::uint64_t p = pt[j];
      std::uint64_t m = next[j];
      if (m > hi) {
        if (p * p > X) break;
        continue;
      }
      const std::uint64_t step = step_factor * p;
      for (; m <= hi; m += step) seg[m - lo] = 0;
      next[j] = m;
    }
    survivors += static_cast<std::uint64_t>(std::count(seg.begin(), seg.begin() + len, 1));
  }
  // Excluded primes above the wheel were never crossed off themselves.
  const std::uint64_t top = std::min<std::uint64_t>(a, pt.pi(X));
  return survivors - (top - wheel_primes);
}

std::uint64_t phi_legendre(double x, double y, const PrimeTable& pt, LegendreBudget budget) {
  const std::uint64_t X = floor_count(x);
  if (X == 0) return 0;
  if (X > pt.limit())
    throw SieveRangeError("phi_legendre: x beyond prime table limit " + std::to_string(pt.limit()));
  if (y >= x) return 1;
  const std::uint64_t a = y < 2.0 ? 0 : pt.pi(y);
  LegendrePhi phi(pt, budget);
  return phi(X, a);
}

std::uint64_t phi_exact(const RoughCountQuery& q, const PrimeTable& pt, PhiMethod method) {
  if (!(q.x >= 1.0) || !(q.y > 1.0) || !std::isfinite(q.x) || !std::isfinite(q.y))
    throw std::invalid_argument("phi_exact: need x >= 1 and y > 1");
  if (method == PhiMethod::automatic)
    method = q.x <= 1e7 ? PhiMethod::sieve : PhiMethod::legendre;
  return method == PhiMethod::sieve ? phi_sieve(q.x, q.y, pt) : phi_legendre(q.x, q.y, pt);
}

double mertens_product(double y, const PrimeTable& pt) {
  if (y < 2.0) return 1.0;
  if (y > static_cast<double>(pt.limit()))
    throw SieveRangeError("mertens_product: y beyond prime table limit");
  const std::uint64_t n = pt.pi(y);
  CompensatedSum s;
  for (std::uint64_t i = 0; i < n; ++i) s += std::log1p(-1.0 / pt[i]);
  return std::exp(s.value());
}

double reciprocal_prime_sum(double lo, double hi, const PrimeTable& pt) {
  if (!(lo >= 2.0) || !(hi >= lo)) throw std::invalid_argument("reciprocal_prime_sum: need 2 <= lo <= hi");
  if (hi > static_cast<double>(pt.limit()))
    throw SieveRangeError("reciprocal_prime_sum: hi beyond prime table limit");
  CompensatedSum s;
  for (std::uint64_t i = pt.pi(lo), end = pt.pi(hi); i < end; ++i) s += 1.0 / pt[i];
  return s.value();
}

BonferroniBounds bonferroni_bounds(double y, const PrimeTable& pt) {
  if (!(y >= 7.0 && y <= 602.0)) throw std::invalid_argument("bonferroni_bounds: need 7 <= y <= 602");
  if (y > static_cast<double>(pt.limit())) throw SieveRangeError("bonferroni_bounds: table too small");
  const std::uint64_t n = pt.pi(y);
  // Power sums of 1/p over 5 < p <= y, then elementary symmetric sums via
  // Newton's identities.
  CompensatedSum s1, s2, s3;
  for (std::uint64_t i = 3; i < n; ++i) {
    const double r = 1.0 / pt[i];
    s1 += r;
    s2 += r * r;
    s3 += r * r * r;
  }
  const double p1 = s1.value(), p2 = s2.value(), p3 = s3.value();
  const double e1 = p1;
  const double e2 = (e1 * p1 - p2) / 2.0;
  const double e3 = (e2 * p1 - e1 * p2 + p3) / 3.0;
  const double a = 4.0 / 15.0 * (1.0 - e1 + e2 - e3);
  const double m = static_cast<double>(n - 3);
  const double binom = 1.0 + m + m * (m - 1.0) / 2.0 + m * (m - 1.0) * (m - 2.0) / 6.0;
  const double b = 14.0 / 15.0 * binom;
  const double slack = a - 0.4 / std::log(y);
  const double threshold = slack > 0.0 ? b / slack : std::numeric_limits<double>::infinity();
  return {a, b, threshold};
}

BonferroniMaximum bonferroni_max_threshold(const PrimeTable& pt) {
  BonferroniMaximum best{7.0, -1.0};
  for (std::uint64_t i = pt.pi(std::uint64_t{7}) - 1; i < pt.size() && pt[i] <= 602; ++i) {
    const double y = pt[i];
    const double t = bonferroni_bounds(y, pt).threshold;
    if (t > best.threshold) best = {y, t};
  }
  return best;
}

}  // namespace roughcount
