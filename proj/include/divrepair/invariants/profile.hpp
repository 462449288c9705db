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

#ifndef DIVREPAIR_INVARIANTS_PROFILE_HPP_
#define DIVREPAIR_INVARIANTS_PROFILE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "divrepair/common/parallel.hpp"
#include "divrepair/invariants/invariant.hpp"

namespace divrepair::inv {

/// Per invariant, two characters: the positive-run class then the
/// negative-run class. U = point never reached, S = reached and always held,
/// V = violated at least once.
struct InvariantProfile {
  std::string chars;

  bool operator==(const InvariantProfile&) const = default;
  std::size_t size() const { return chars.size(); }
};

/// Runs `candidate` with tracing on every positive then every negative test
/// and records reach/violation per invariant per class. Crashed or timed-out
/// runs contribute the samples they produced before stopping.
InvariantProfile profile(const lang::Program& candidate,
                         std::span<const Invariant> invariants,
                         const harness::TestSuite& positives,
                         const harness::TestSuite& negatives,
                         std::uint64_t fuel = lang::kDefaultFuel);

/// Profiles of many candidates; one task per (candidate, test).
std::vector<InvariantProfile> profile_population(
    std::span<const lang::Program> candidates,
    std::span<const Invariant> invariants, const harness::TestSuite& positives,
    const harness::TestSuite& negatives, std::uint64_t fuel, Jobs jobs);

/// Hamming distance. Throws LengthMismatch.
std::size_t invariant_distance(const InvariantProfile& a,
                               const InvariantProfile& b);

/// Sum of distances from population[member] to every other member.
std::size_t invariant_diversity(std::size_t member,
                                std::span<const InvariantProfile> population);

/// invariant_diversity() for every member, one task per member.
std::vector<std::size_t> population_diversity(
    std::span<const InvariantProfile> population, Jobs jobs);

/// Reference loop for population_diversity().
std::vector<std::size_t> population_diversity_serial(
    std::span<const InvariantProfile> population);

}  // namespace divrepair::inv

#endif  // DIVREPAIR_INVARIANTS_PROFILE_HPP_
