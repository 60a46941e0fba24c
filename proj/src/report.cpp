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

#include "roughcount/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

namespace roughcount {
namespace {

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

double number_or_inf(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

void csv_row(std::ostream& out, const VerificationReport& r, const char* kind,
             const PointRecord& p) {
  out << r.theorem_id << ',' << r.mode << ',' << kind << ',' << p.check << ',' << format_full(p.x)
      << ',' << format_full(p.y) << ',' << format_full(p.lhs) << ',' << format_full(p.rhs) << ','
      << format_full(p.margin) << ",\n";
}

}  // namespace

std::string format_full(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void to_json(nlohmann::json& j, const PointRecord& r) {
  j = {{"check", r.check}, {"x", r.x},     {"y", r.y},
       {"lhs", r.lhs},     {"rhs", r.rhs}, {"margin", number_or_null(r.margin)}};
}

void from_json(const nlohmann::json& j, PointRecord& r) {
  j.at("check").get_to(r.check);
  j.at("x").get_to(r.x);
  j.at("y").get_to(r.y);
  j.at("lhs").get_to(r.lhs);
  j.at("rhs").get_to(r.rhs);
  r.margin = number_or_inf(j.at("margin"));
}

void to_json(nlohmann::json& j, const CheckSummary& c) {
  j = {{"name", c.name}, {"points", c.points}, {"min_margin", number_or_null(c.min_margin)}};
}

void from_json(const nlohmann::json& j, CheckSummary& c) {
  j.at("name").get_to(c.name);
  j.at("points").get_to(c.points);
  c.min_margin = number_or_inf(j.at("min_margin"));
}

void to_json(nlohmann::json& j, const VerificationReport& r) {
  j = nlohmann::json::object();
  j["theorem_id"] = r.theorem_id;
  j["mode"] = r.mode;
  if (!r.label.empty()) j["label"] = r.label;
  j["grid"] = r.grid;
  j["points_checked"] = r.points_checked;
  j["cross_checks"] = r.cross_checks;
  j["min_margin"] = number_or_null(r.min_margin);
  j["worst"] = r.worst ? nlohmann::json(*r.worst) : nlohmann::json(nullptr);
  j["checks"] = r.checks;
  j["violations"] = r.violations;
  j["inconclusive"] = r.inconclusive;
  j["runtime_seconds"] = r.runtime_seconds;
}

void from_json(const nlohmann::json& j, VerificationReport& r) {
  j.at("theorem_id").get_to(r.theorem_id);
  j.at("mode").get_to(r.mode);
  r.label = j.value("label", "");
  r.grid = j.at("grid");
  j.at("points_checked").get_to(r.points_checked);
  j.at("cross_checks").get_to(r.cross_checks);
  r.min_margin = number_or_inf(j.at("min_margin"));
  if (j.at("worst").is_null()) r.worst.reset();
  else r.worst = j.at("worst").get<PointRecord>();
  j.at("checks").get_to(r.checks);
  j.at("violations").get_to(r.violations);
  j.at("inconclusive").get_to(r.inconclusive);
  j.at("runtime_seconds").get_to(r.runtime_seconds);
}

void write_csv_header(std::ostream& out) {
  out << "theorem_id,mode,kind,check,x,y,lhs,rhs,margin,points\n";
}

void write_csv(std::ostream& out, const VerificationReport& r) {
  for (const auto& c : r.checks)
    out << r.theorem_id << ',' << r.mode << ",check," << c.name << ",,,,," << format_full(c.min_margin)
        << ',' << c.points << '\n';
  if (r.worst) csv_row(out, r, "worst", *r.worst);
  for (const auto& v : r.violations) csv_row(out, r, "violation", v);
  for (const auto& v : r.inconclusive) csv_row(out, r, "inconclusive", v);
}

}  // namespace roughcount
