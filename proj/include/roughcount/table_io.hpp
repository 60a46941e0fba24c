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

#include <filesystem>
#include <iosfwd>
#include <optional>

#include <json.hpp>

#include "roughcount/sieve.hpp"
#include "roughcount/specfun.hpp"

namespace roughcount {

inline constexpr int kTableFormatVersion = 1;
inline constexpr int kPrimeFormatVersion = 1;

// JSON blob: {format, version, kind, u_max, tol, error_bound,
// intervals: [{lo, hi, log_scale, coeffs}]}.
nlohmann::json table_to_json(const PiecewiseFunctionTable& table);
PiecewiseFunctionTable table_from_json(const nlohmann::json& j);

// Binary: "RCPRIME\0", u32 version, u64 limit, u64 count, then LEB128 gaps
// between consecutive primes (the first gap is measured from 0).
void write_prime_table(const PrimeTable& pt, std::ostream& out);
PrimeTable read_prime_table(std::istream& in);

// Disk caches keyed by version and build parameters; a stale or unreadable
// file is rebuilt and overwritten.
PrimeTable cached_primes(const std::optional<std::filesystem::path>& dir, std::uint64_t limit);
SpecialTables cached_tables(const std::optional<std::filesystem::path>& dir, double u_max = 50.0,
                            double tol = 1e-12);

}  // namespace roughcount
