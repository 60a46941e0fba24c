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
#include <string>
#include <vector>

namespace roughcount {

// Exit codes: 0 success / no violations, 1 violations or table mismatch,
// 2 usage or parameter error, 3 internal failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

// Parses args (args[0] is the program name) and runs one subcommand.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace roughcount
