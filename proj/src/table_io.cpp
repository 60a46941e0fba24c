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

#include "roughcount/table_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace roughcount {
namespace {

constexpr std::array<char, 8> kPrimeMagic = {'R', 'C', 'P', 'R', 'I', 'M', 'E', '\0'};

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& in) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
    throw std::runtime_error("prime table: truncated header");
  return v;
}

TableKind kind_from_string(const std::string& s) {
  if (s == "buchstab") return TableKind::buchstab;
  if (s == "dickman") return TableKind::dickman;
  throw std::runtime_error("function table: unknown kind '" + s + "'");
}

}  // namespace

nlohmann::json table_to_json(const PiecewiseFunctionTable& table) {
  nlohmann::json intervals = nlohmann::json::array();
  for (const auto& iv : table.intervals()) {
    const auto c = iv.series.coefficients();
    intervals.push_back({{"lo", iv.lo},
                         {"hi", iv.hi},
                         {"log_scale", iv.log_scale},
                         {"coeffs", std::vector<double>(c.begin(), c.end())}});
  }
  return {{"format", "roughcount.table"},
          {"version", kTableFormatVersion},
          {"kind", to_string(table.kind())},
          {"u_max", table.u_max()},
          {"tol", table.tol()},
          {"error_bound", table.error_bound()},
          {"intervals", std::move(intervals)}};
}

PiecewiseFunctionTable table_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "roughcount.table")
    throw std::runtime_error("function table: not a roughcount.table blob");
  if (j.at("version").get<int>() != kTableFormatVersion)
    throw std::runtime_error("function table: unsupported version");
  std::vector<TableInterval> intervals;
  for (const auto& iv : j.at("intervals")) {
    const double lo = iv.at("lo").get<double>(), hi = iv.at("hi").get<double>();
    intervals.push_back({lo, hi, iv.at("log_scale").get<double>(),
                         ChebSeries(lo, hi, iv.at("coeffs").get<std::vector<double>>())});
  }
  return {kind_from_string(j.at("kind").get<std::string>()), j.at("u_max").get<double>(),
          j.at("tol").get<double>(), j.at("error_bound").get<double>(), std::move(intervals)};
}

void write_prime_table(const PrimeTable& pt, std::ostream& out) {
  out.write(kPrimeMagic.data(), kPrimeMagic.size());
  put<std::uint32_t>(out, kPrimeFormatVersion);
  put<std::uint64_t>(out, pt.limit());
  put<std::uint64_t>(out, pt.size());
  std::uint32_t prev = 0;
  std::string buf;
  buf.reserve(pt.size() + 16);
  for (std::uint32_t p : pt.primes()) {
    std::uint32_t gap = p - prev;
    prev = p;
    do {
      auto byte = static_cast<char>(gap & 0x7f);
      gap >>= 7;
      if (gap) byte = static_cast<char>(byte | 0x80);
      buf.push_back(byte);
    } while (gap);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("prime table: write failed");
}

PrimeTable read_prime_table(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kPrimeMagic)
    throw std::runtime_error("prime table: bad magic");
  if (get<std::uint32_t>(in) != kPrimeFormatVersion)
    throw std::runtime_error("prime table: unsupported version");
  const auto limit = get<std::uint64_t>(in);
  const auto count = get<std::uint64_t>(in);
  std::vector<std::uint32_t> primes;
  primes.reserve(count);
  std::uint32_t prev = 0;
  std::istreambuf_iterator<char> it(in), end;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint32_t gap = 0;
    for (int shift = 0;; shift += 7) {
      if (it == end || shift > 28) throw std::runtime_error("prime table: truncated gap stream");
      const auto byte = static_cast<unsigned char>(*it++);
      gap |= static_cast<std::uint32_t>(byte & 0x7f) << shift;
      if (!(byte & 0x80)) break;
    }
    prev += gap;
    primes.push_back(prev);
  }
  return PrimeTable(limit, std::move(primes));
}

PrimeTable cached_primes(const std::optional<std::filesystem::path>& dir, std::uint64_t limit) {
  if (!dir) return primes_up_to(limit);
  const auto file = *dir / ("primes-v" + std::to_string(kPrimeFormatVersion) + "-" +
                            std::to_string(limit) + ".bin");
  if (std::ifstream in(file, std::ios::binary); in) {
    try {
      PrimeTable pt = read_prime_table(in);
      if (pt.limit() == limit) return pt;
    } catch (const std::exception&) {
      // Unreadable cache: rebuild below.
    }
  }
  PrimeTable pt = primes_up_to(limit);
  std::filesystem::create_directories(*dir);
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (out) write_prime_table(pt, out);
  return pt;
}

SpecialTables cached_tables(const std::optional<std::filesystem::path>& dir, double u_max,
                            double tol) {
  if (!dir) return build_tables(u_max, tol);
  std::ostringstream name;
  name << "tables-v" << kTableFormatVersion << "-u" << u_max << "-tol" << tol << ".json";
  const auto file = *dir / name.str();
  if (std::ifstream in(file); in) {
    try {
      const auto j = nlohmann::json::parse(in);
      PiecewiseFunctionTable omega = table_from_json(j.at("omega"));
      PiecewiseFunctionTable rho = table_from_json(j.at("rho"));
      if (omega.tol() == tol && rho.tol() == tol && omega.u_max() == std::ceil(u_max))
        return {std::move(omega), std::move(rho)};
    } catch (const std::exception&) {
      // Stale or corrupt: rebuild below.
    }
  }
  SpecialTables tables = build_tables(u_max, tol);
  std::filesystem::create_directories(*dir);
  std::ofstream out(file, std::ios::trunc);
  if (out) out << nlohmann::json{{"omega", table_to_json(tables.omega)}, {"rho", table_to_json(tables.rho)}};
  return tables;
}

}  // namespace roughcount
