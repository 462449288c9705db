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

#ifndef DIVREPAIR_CLI_CONFIG_HPP_
#define DIVREPAIR_CLI_CONFIG_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "divrepair/search/repair.hpp"
#include "divrepair/testgen/testgen.hpp"

namespace divrepair::cli {

/// Everything one experiment needs. `search` carries seed, fuel and
/// min_support; the rest names what to run and where results go.
struct RunConfig {
  search::SearchConfig search;
  search::Technique technique = search::Technique::kGenProg;
  std::string bug;
  /// Empty means "resolve from the environment" (see output_root()).
  std::string out;
  std::size_t testgen_budget = testgen::kDefaultBudget;

  bool operator==(const RunConfig&) const = default;

  /// Throws divrepair::Error on out-of-range fields.
  void validate() const;
};

/// `key = value` lines, one per field, in a fixed order. Doubles use the
/// shortest text that reads back to the same value.
std::string save_config(const RunConfig& config);

/// Parses the text written by save_config(). Fields not mentioned keep the
/// values from `base`. `#` starts a comment. Throws divrepair::Error on an
/// unknown key, a repeated key or a malformed value.
RunConfig load_config(std::string_view text, const RunConfig& base = {});
RunConfig load_config_file(const std::filesystem::path& path,
                           const RunConfig& base = {});

/// Output root: an explicit `--out` wins, then DIVREPAIR_OUT, then "out".
std::filesystem::path output_root(const std::string& flag);

}  // namespace divrepair::cli

#endif  // DIVREPAIR_CLI_CONFIG_HPP_
