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

#ifndef DIVREPAIR_SEARCH_OPERATORS_HPP_
#define DIVREPAIR_SEARCH_OPERATORS_HPP_

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "divrepair/common/rng.hpp"
#include "divrepair/harness/test_case.hpp"
#include "divrepair/search/patch.hpp"

namespace divrepair::search {

/// Where a patch was found: during initialization (generation 0) or by
/// selection-driven breeding (generation >= 1).
struct Patch {
  std::vector<Edit> edits;
  int generation = 0;
  std::uint64_t seed = 0;

  bool from_init() const { return generation == 0; }
  bool operator==(const Patch&) const = default;
};

using FaultWeights = std::map<lang::StatementId, double>;

/// GenProg weighting over every statement of the original: 1.0 if executed
/// only by negative tests, 0.1 if by both, 0.0 otherwise. Throws
/// NoLocalizableFault when nothing gets a positive weight.
FaultWeights localize(const lang::Program& original,
                      const harness::TestSuite& positives,
                      const harness::TestSuite& negatives,
                      std::uint64_t fuel = lang::kDefaultFuel);

inline constexpr int kMutationRetries = 16;

/// Returns `patch` plus one edit. Draw order per attempt: target (weighted),
/// operator (uniform over append/replace/delete), donor (uniform over the
/// original's statements, append/replace only). Attempts whose result fails
/// static checks are redrawn; after kMutationRetries the patch comes back
/// unchanged.
Patch mutate(const Patch& patch, const lang::Program& original,
             const FaultWeights& weights, SeededRng& rng);

/// One-point crossover with independent cut points in each parent.
std::pair<Patch, Patch> crossover(const Patch& a, const Patch& b, SeededRng& rng);

/// Same splice with explicit cut points.
std::pair<Patch, Patch> crossover_at(const Patch& a, const Patch& b,
                                     std::size_t cut_a, std::size_t cut_b);

struct Contestant {
  double fitness = 0.0;
  double diversity = 0.0;
};

struct SelectionParams {
  std::size_t tournament_k = 2;
  double lambda = 0.0;
  double max_fitness = 1.0;
  /// 2 * |invariants| * (pop_size - 1); 0 disables the diversity term.
  double max_diversity = 0.0;
};

/// (1 - lambda) * fitness / max_fitness + lambda * diversity / max_diversity.
double selection_score(const Contestant& c, const SelectionParams& params);

/// Tournament of k uniform draws with replacement. A contestant that ties
/// the current best replaces it on a seeded coin flip. Returns an index.
std::size_t select(std::span<const Contestant> population,
                   const SelectionParams& params, SeededRng& rng);

}  // namespace divrepair::search

#endif  // DIVREPAIR_SEARCH_OPERATORS_HPP_
