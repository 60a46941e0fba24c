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

#include <algorithm>
#include <cmath>

#include "roughcount/sieve.hpp"

namespace roughcount {
namespace {

// Bytes per memo entry: list node plus hash bucket and node.
constexpr std::size_t kEntryBytes = 96;

std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

}  // namespace

LegendrePhi::LegendrePhi(const PrimeTable& pt, LegendreBudget budget)
    : pt_(pt), budget_(budget), memo_capacity_(budget.memo_bytes / kEntryBytes) {
  const std::size_t small = std::min(kSmallA, pt_.size());
  primorial_.assign(small + 1, 1);
  small_prefix_.resize(small + 1);
  for (std::size_t a = 1; a <= small; ++a) {
    primorial_[a] = primorial_[a - 1] * pt_[a - 1];
    const auto period = static_cast<std::uint32_t>(primorial_[a]);
    auto& prefix = small_prefix_[a];
    prefix.assign(period, 0);
    std::uint32_t count = 0;
    for (std::uint32_t r = 1; r < period; ++r) {
      bool rough = true;
      for (std::size_t i = 0; i < a && rough; ++i) rough = r % pt_[i] != 0;
      count += rough;
      prefix[r] = count;
    }
  }
}

std::uint64_t LegendrePhi::operator()(std::uint64_t x, std::size_t a) {
  if (a > pt_.size()) throw SieveRangeError("LegendrePhi: a exceeds the prime table");
  return phi(x, a);
}

std::uint64_t LegendrePhi::phi_small(std::uint64_t x, std::size_t a) const {
  if (a == 0) return x;
  const std::uint64_t period = primorial_[a];
  // The full period contributes phi(P_a) = prefix[P_a - 1] + 1 (P_a - 1 is rough).
  const std::uint64_t per_period = small_prefix_[a][period - 1];
  return (x / period) * per_period + small_prefix_[a][x % period];
}

bool LegendrePhi::memo_lookup(std::uint64_t key, std::uint64_t& value) {
  const auto it = index_.find(key);
  if (it == index_.end()) return false;
  lru_.splice(lru_.begin(), lru_, it->second);
  value = it->second->second;
  return true;
}

void LegendrePhi::memo_store(std::uint64_t key, std::uint64_t value) {
  if (memo_capacity_ == 0) return;
  if (lru_.size() >= memo_capacity_) {
    index_.erase(lru_.back().first);
    lru_.pop_back();
  }
  lru_.emplace_front(key, value);
  index_[key] = lru_.begin();
}

std::uint64_t LegendrePhi::phi(std::uint64_t x, std::size_t a) {
  if (++calls_ > budget_.max_calls)
    throw PhiBudgetExceeded("LegendrePhi: call budget exhausted");
  if (x == 0) return 0;
  if (a <= kSmallA && a < primorial_.size()) return phi_small(x, a);
  // Only 1 survives below the next prime.
  if (a < pt_.size() && x < pt_[a]) return 1;
  const std::uint64_t root = isqrt(x);
  if (a >= pt_.size() || std::uint64_t{pt_[a]} > root) {
    // Survivors are 1 and the primes in (p_a, x].
    const std::uint64_t pix = pt_.pi(x);
    return pix >= a ? 1 + pix - a : 1;
  }

  // Keys pack x below 2^48 and a below 2^16.
  const bool memoizable = x < (std::uint64_t{1} << 48) && a < (std::size_t{1} << 16) && x > 4096;
  const std::uint64_t key = (x << 16) | a;
  std::uint64_t cached;
  if (memoizable && memo_lookup(key, cached)) return cached;

  // phi(x, a) = phi(x, c) - sum_{c <= i < a} phi(x / p_i, i). Terms with
  // p_i^2 > x have x / p_i < p_i and contribute 1 while p_i <= x.
  const std::size_t c = std::min(kSmallA, primorial_.size() - 1);
  const std::size_t pi_root = static_cast<std::size_t>(pt_.pi(root));
  const std::size_t loop_end = std::min(a, pi_root);
  std::uint64_t result = phi_small(x, c);
  for (std::size_t i = c; i < loop_end; ++i) result -= phi(x / pt_[i], i);
  if (a > loop_end) result -= a - loop_end;
  if (memoizable) memo_store(key, result);
  return result;
}

}  // namespace roughcount
