// Copyright 2026 The divrepair Authors
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

#ifndef DIVREPAIR_CLI_APP_HPP_
#define DIVREPAIR_CLI_APP_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace divrepair::cli {

/// Exit codes shared by every verb.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNoPatch = 2;

/// "A..B" (inclusive) or a single number.
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text);

/// Entry point of the `divrepair` executable. `args` excludes the program
/// name. Diagnostics go to `err`, results to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace divrepair::cli

#endif  // DIVREPAIR_CLI_APP_HPP_
