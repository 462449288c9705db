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

#ifndef DIVREPAIR_CLI_CORPUS_HPP_
#define DIVREPAIR_CLI_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "divrepair/harness/test_case.hpp"
#include "divrepair/lang/ast.hpp"
#include "divrepair/search/repair.hpp"

namespace divrepair::cli {

/// One bug directory:
///
///   <id>/program.mini         buggy program
///   <id>/reference.mini       optional known-good version
///   <id>/tests/whitebox/      <name>.in / <name>.out pairs fed to the search
///   <id>/tests/blackbox/      held-out pairs used only for correctness
struct BugBundle {
  std::string id;
  std::filesystem::path dir;
  lang::Program program;
  std::optional<lang::Program> reference;
  harness::TestSuite whitebox;
  harness::TestSuite blackbox;
};

/// Loads and validates a bundle: both suites nonempty, the buggy program
/// fails at least one white-box test, the reference passes every test.
/// Throws divrepair::Error (or NoFailingTests) naming the offending part.
BugBundle load_bundle(const std::filesystem::path& dir,
                      std::uint64_t fuel = lang::kDefaultFuel);

/// Re-checks the bundle invariants on an already loaded bundle.
void validate_bundle(const BugBundle& bundle,
                     std::uint64_t fuel = lang::kDefaultFuel);

/// Bug directories under a corpus root, sorted by name.
std::vector<std::filesystem::path> list_bundles(const std::filesystem::path& root);

/// `arg` may be a bundle directory or a bug id under `corpus_root`.
std::filesystem::path resolve_bug(const std::string& arg,
                                  const std::filesystem::path& corpus_root);

search::BugInput to_input(const BugBundle& bundle);

/// <root>/runs/<bug>/<technique>/seed<N>.json
std::filesystem::path run_path(const std::filesystem::path& root,
                               const std::string& bug,
                               search::Technique technique, std::uint64_t seed);

}  // namespace divrepair::cli

#endif  // DIVREPAIR_CLI_CORPUS_HPP_
