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

// Serial reference loops against the OpenMP kernels on a population taken
// from a real repair run. Parallel cases take the worker count as argument.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <vector>

#include "divrepair/harness/fitness.hpp"
#include "divrepair/invariants/profile.hpp"
#include "divrepair/lang/parser.hpp"
#include "divrepair/search/repair.hpp"
#include "divrepair/testgen/testgen.hpp"

namespace {

using namespace divrepair;

struct Fixture {
  lang::Program original;
  harness::TestSuite whitebox;
  harness::Classification tests;
  std::vector<inv::Invariant> invariants;
  std::vector<lang::Program> population;
  std::vector<inv::InvariantProfile> profiles;

  Fixture() {
    const std::filesystem::path dir = std::filesystem::path(DIVREPAIR_CORPUS_DIR) / "median-b1";
    original = lang::parse_file(dir / "program.mini");
    whitebox = harness::load_suite(dir / "tests" / "whitebox", harness::Origin::kWhitebox);
    tests = harness::classify_tests(original, whitebox);
    invariants = inv::infer_invariants(original, whitebox);
    search::SearchConfig cfg;
    cfg.max_generations = 3;
    const auto rec = search::repair({"median-b1", original, whitebox}, cfg,
                                    search::Technique::kDivGP);
    for (const auto& c : rec.generations.back().candidates) {
      population.push_back(*search::apply_edits(original, c.edits));
    }
    profiles = inv::profile_population(population, invariants, tests.positives,
                                       tests.negatives, lang::kDefaultFuel, Jobs{1});
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_FitnessSerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(harness::evaluate_population_serial(
        f.population, f.tests.positives, f.tests.negatives, {}, lang::kDefaultFuel));
  }
}

void BM_FitnessParallel(benchmark::State& state) {
  const auto& f = fixture();
  const Jobs jobs{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(harness::evaluate_population(
        f.population, f.tests.positives, f.tests.negatives, {}, lang::kDefaultFuel, jobs));
  }
}

void BM_ProfilesParallel(benchmark::State& state) {
  const auto& f = fixture();
  const Jobs jobs{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(inv::profile_population(
        f.population, f.invariants, f.tests.positives, f.tests.negatives,
        lang::kDefaultFuel, jobs));
  }
}

void BM_DiversitySerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(inv::population_diversity_serial(f.profiles));
  }
}

void BM_DiversityParallel(benchmark::State& state) {
  const auto& f = fixture();
  const Jobs jobs{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(inv::population_diversity(f.profiles, jobs));
  }
}

// Eight members keep one iteration of the pairwise testgen matrix short.
std::vector<lang::Program> testgen_members() {
  const auto& p = fixture().population;
  return {p.begin(), p.begin() + std::min<std::size_t>(8, p.size())};
}

void BM_PairwiseSerial(benchmark::State& state) {
  const auto members = testgen_members();
  const auto seeds = testgen::index_pair_seeds(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        testgen::pairwise_distances_serial(members, 50, seeds, lang::kDefaultFuel));
  }
}

void BM_PairwiseParallel(benchmark::State& state) {
  const auto members = testgen_members();
  const auto seeds = testgen::index_pair_seeds(1);
  const Jobs jobs{static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        testgen::pairwise_distances(members, 50, seeds, lang::kDefaultFuel, jobs));
  }
}

}  // namespace

BENCHMARK(BM_FitnessSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FitnessParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ProfilesParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DiversitySerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DiversityParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_PairwiseSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairwiseParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
