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

#ifndef DIVREPAIR_SEARCH_REPAIR_HPP_
#define DIVREPAIR_SEARCH_REPAIR_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divrepair/common/parallel.hpp"
#include "divrepair/harness/fitness.hpp"
#include "divrepair/invariants/invariant.hpp"
#include "divrepair/search/operators.hpp"

namespace divrepair::search {

enum class Technique { kGenProg, kDivGP };

std::string_view to_string(Technique t);
/// "genprog" or "divgp"; throws divrepair::Error otherwise.
Technique parse_technique(std::string_view name);

struct SearchConfig {
  std::size_t pop_size = 40;
  std::size_t max_generations = 10;
  std::size_t tournament_k = 2;
  harness::FitnessWeights weights;
  /// Weight of the diversity term for divgp; genprog always selects with 0.
  double lambda = 0.5;
  double mutation_rate = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t fuel = lang::kDefaultFuel;
  std::size_t min_support = inv::kDefaultMinSupport;

  bool operator==(const SearchConfig&) const = default;

  /// Throws divrepair::Error on out-of-range fields.
  void validate() const;
};

/// What the search needs to know about a bug.
struct BugInput {
  std::string id;
  lang::Program original;
  harness::TestSuite whitebox;
};

struct CandidateLog {
  std::vector<Edit> edits;
  double fitness = 0.0;
  std::optional<double> diversity;
  std::optional<std::string> profile;

  bool operator==(const CandidateLog&) const = default;
};

struct GenerationLog {
  std::size_t generation = 0;
  std::vector<CandidateLog> candidates;

  bool operator==(const GenerationLog&) const = default;
};

struct PatchRecord {
  std::string id;
  Patch patch;
  /// Found during initialization; reported but excluded from analysis.
  bool discarded = false;
  /// Pretty-printed patched program.
  std::string source;

  bool operator==(const PatchRecord&) const = default;
};

struct RunRecord {
  std::string bug;
  Technique technique = Technique::kGenProg;
  SearchConfig config;
  std::vector<std::string> positives;
  std::vector<std::string> negatives;
  std::size_t invariant_count = 0;
  std::vector<GenerationLog> generations;
  std::vector<PatchRecord> patches;

  bool operator==(const RunRecord&) const = default;

  /// Patches found after initialization.
  std::vector<const PatchRecord*> search_patches() const;
};

/// Runs one repair attempt. Initialization draws pop_size single-edit
/// mutants of the empty patch; everything up to the end of initialization
/// consumes the generator identically for both techniques. Each later
/// generation is bred from the previous one by tournament selection,
/// one-point crossover per parent pair and mutation of each child; there is
/// no elitism. Every candidate that passes all white-box tests is recorded
/// as a patch. Throws NoFailingTests or NoLocalizableFault.
RunRecord repair(const BugInput& bug, const SearchConfig& config,
                 Technique technique, Jobs jobs = {});

/// Canonical JSON text of a record (sorted keys, two-space indent, trailing
/// newline). Byte-identical for equal records.
std::string serialize(const RunRecord& record);
RunRecord deserialize_run(std::string_view json_text);

/// Generation-0 edits and fitness only: the part both techniques share.
std::string serialize_initial_population(const RunRecord& record);

/// True iff `program` passes every test in `suite`.
bool passes_all(const lang::Program& program, const harness::TestSuite& suite,
                std::uint64_t fuel = lang::kDefaultFuel);

}  // namespace divrepair::search

#endif  // DIVREPAIR_SEARCH_REPAIR_HPP_
