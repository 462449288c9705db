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

#ifndef DIVREPAIR_HARNESS_FITNESS_HPP_
#define DIVREPAIR_HARNESS_FITNESS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "divrepair/common/parallel.hpp"
#include "divrepair/harness/test_case.hpp"

namespace divrepair::harness {

/// Weighted-sum fitness coefficients. The 1/10 default weights the
/// fault-demonstrating tests heavily, as GenProg does.
struct FitnessWeights {
  double w_pos = 1.0;
  double w_neg = 10.0;

  bool operator==(const FitnessWeights&) const = default;
};

/// Throws divrepair::Error unless both weights are nonnegative and their sum
/// is positive.
void validate(const FitnessWeights& weights);

struct FitnessResult {
  std::size_t positives_passed = 0;
  std::size_t negatives_passed = 0;
  double value = 0.0;

  bool operator==(const FitnessResult&) const = default;
};

double max_fitness(std::size_t positives, std::size_t negatives,
                   const FitnessWeights& weights);

/// w_pos * (positives passed) + w_neg * (negatives passed). Roles come from
/// the original program's classification, never from `program`.
double fitness(const lang::Program& program, const TestSuite& positives,
               const TestSuite& negatives, const FitnessWeights& weights,
               std::uint64_t fuel = lang::kDefaultFuel);

FitnessResult evaluate(const lang::Program& program, const TestSuite& positives,
                       const TestSuite& negatives, const FitnessWeights& weights,
                       std::uint64_t fuel = lang::kDefaultFuel);

/// Fitness of every program. One task per (program, test) pair.
std::vector<FitnessResult> evaluate_population(
    std::span<const lang::Program> programs, const TestSuite& positives,
    const TestSuite& negatives, const FitnessWeights& weights,
    std::uint64_t fuel, Jobs jobs);

/// Reference loop for evaluate_population().
std::vector<FitnessResult> evaluate_population_serial(
    std::span<const lang::Program> programs, const TestSuite& positives,
    const TestSuite& negatives, const FitnessWeights& weights,
    std::uint64_t fuel);

}  // namespace divrepair::harness

#endif  // DIVREPAIR_HARNESS_FITNESS_HPP_
