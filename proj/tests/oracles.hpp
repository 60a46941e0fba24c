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

// Independent reference computations for the tests. Deliberately naive.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

inline bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint32_t> primes_trial(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 2; k <= n; ++k)
    if (is_prime_trial(k)) out.push_back(k);
  return out;
}

// Plain (unsegmented) sieve of Eratosthenes.
inline std::vector<std::uint32_t> primes_plain_sieve(std::uint32_t n) {
  std::vector<char> comp(n + 1, 0);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = 1;
  }
  return out;
}

inline std::uint64_t least_prime_factor(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

// #{1 <= n <= x : every prime factor of n exceeds y}, by factoring each n.
inline std::uint64_t phi_brute(double x, double y) {
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; static_cast<double>(n) <= x; ++n)
    if (n == 1 || static_cast<double>(least_prime_factor(n)) > y) ++count;
  return count;
}

// sum over d | P(y) of mu(d) floor(x / d), by enumerating subsets.
inline std::int64_t phi_inclusion_exclusion(std::uint64_t x, const std::vector<std::uint32_t>& primes) {
  std::int64_t total = 0;
  const std::size_t k = primes.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::uint64_t d = 1;
    int bits = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) {
        d *= primes[i];
        ++bits;
      }
    const auto term = static_cast<std::int64_t>(x / d);
    total += bits % 2 ? -term : term;
  }
  return total;
}

// li(z) = gamma + log log z + sum_{n >= 1} (log z)^n / (n n!), z > 1.
inline double li_series(double z) {
  const double L = std::log(z);
  double term = 1.0, sum = 0.0;
  for (int n = 1; n < 400; ++n) {
    term *= L / n;
    const double add = term / n;
    sum += add;
    if (add < 1e-18 * sum) break;
  }
  return 0.57721566490153286061 + std::log(L) + sum;
}

// Composite Simpson on [a, b] with n (even) panels.
template <class F>
double simpson(F&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle
