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

#include "divrepair/harness/fitness.hpp"

#include <cmath>

#include "divrepair/common/errors.hpp"

namespace divrepair::harness {
namespace {

FitnessResult tally(std::size_t pos, std::size_t neg,
                    const FitnessWeights& weights) {
  FitnessResult r;
  r.positives_passed = pos;
  r.negatives_passed = neg;
  r.value = weights.w_pos * static_cast<double>(pos) +
            weights.w_neg * static_cast<double>(neg);
  return r;
}

}  // namespace

void validate(const FitnessWeights& weights) {
  if (!(weights.w_pos >= 0.0) || !(weights.w_neg >= 0.0) ||
      !(weights.w_pos + weights.w_neg > 0.0)) {
    throw Error("fitness weights must be nonnegative with a positive sum");
  }
}

double max_fitness(std::size_t positives, std::size_t negatives,
                   const FitnessWeights& weights) {
  return tally(positives, negatives, weights).value;
}

FitnessResult evaluate(const lang::Program& program, const TestSuite& positives,
                       const TestSuite& negatives, const FitnessWeights& weights,
                       std::uint64_t fuel) {
  std::size_t pos = 0;
  std::size_t neg = 0;
  for (const TestCase& t : positives) pos += run_test(program, t, fuel) == TestResult::kPass;
  for (const TestCase& t : negatives) neg += run_test(program, t, fuel) == TestResult::kPass;
  return tally(pos, neg, weights);
}

double fitness(const lang::Program& program, const TestSuite& positives,
               const TestSuite& negatives, const FitnessWeights& weights,
               std::uint64_t fuel) {
  return evaluate(program, positives, negatives, weights, fuel).value;
}

std::vector<FitnessResult> evaluate_population_serial(
    std::span<const lang::Program> programs, const TestSuite& positives,
    const TestSuite& negatives, const FitnessWeights& weights,
    std::uint64_t fuel) {
  std::vector<FitnessResult> out;
  out.reserve(programs.size());
  for (const lang::Program& p : programs) {
    out.push_back(evaluate(p, positives, negatives, weights, fuel));
  }
  return out;
}

std::vector<FitnessResult> evaluate_population(
    std::span<const lang::Program> programs, const TestSuite& positives,
    const TestSuite& negatives, const FitnessWeights& weights,
    std::uint64_t fuel, Jobs jobs) {
  const std::size_t tests = positives.size() + negatives.size();
  // One pass flag per (program, test); each task owns its slot.
  std::vector<std::uint8_t> passed(programs.size() * tests, 0);
  parallel_for(passed.size(), jobs, [&](std::size_t k) {
    const std::size_t prog = k / tests;
    const std::size_t test = k % tests;
    const TestCase& t = test < positives.size()
                            ? positives[test]
                            : negatives[test - positives.size()];
    passed[k] = run_test(programs[prog], t, fuel) == TestResult::kPass;
  });
  std::vector<FitnessResult> out;
  out.reserve(programs.size());
  for (std::size_t prog = 0; prog < programs.size(); ++prog) {
    std::size_t pos = 0;
    std::size_t neg = 0;
    for (std::size_t test = 0; test < tests; ++test) {
      if (!passed[prog * tests + test]) continue;
      (test < positives.size() ? pos : neg) += 1;
    }
    out.push_back(tally(pos, neg, weights));
  }
  return out;
}

}  // namespace divrepair::harness
