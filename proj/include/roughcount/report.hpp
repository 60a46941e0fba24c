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

#include <iosfwd>
#include <span>

#include <json.hpp>

#include "roughcount/verifier.hpp"

namespace roughcount {

void to_json(nlohmann::json& j, const PointRecord& r);
void from_json(const nlohmann::json& j, PointRecord& r);
void to_json(nlohmann::json& j, const CheckSummary& c);
void from_json(const nlohmann::json& j, CheckSummary& c);
// An infinite min_margin (no points) is written as null.
void to_json(nlohmann::json& j, const VerificationReport& r);
void from_json(const nlohmann::json& j, VerificationReport& r);

// Columns: theorem_id,mode,kind,check,x,y,lhs,rhs,margin,points. `kind` is
// one of check (per-check summary), worst, violation, inconclusive.
void write_csv_header(std::ostream& out);
void write_csv(std::ostream& out, const VerificationReport& r);

// Shortest round-trip text for a double; "inf", "-inf", "nan" otherwise.
std::string format_full(double v);

}  // namespace roughcount
