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

#ifndef DIVREPAIR_TESTGEN_TESTGEN_HPP_
#define DIVREPAIR_TESTGEN_TESTGEN_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "divrepair/common/parallel.hpp"
#include "divrepair/common/rng.hpp"
#include "divrepair/lang/interpreter.hpp"

namespace divrepair::testgen {

inline constexpr std::size_t kDefaultBudget = 200;

/// Coverage goal reached by every execution that starts. Statement ids start
/// at 1, so this never collides with a real branch; it guarantees the first
/// input of any suite is retained.
inline constexpr lang::BranchId kEntryGoal{0, false};

/// Types of the values consumed by the `read` statements of `main`, in
/// pre-order. Reads inside called functions are not counted.
std::vector<lang::Type> input_shape(const lang::Program& program);

/// One candidate input: ints uniform in [-100, 100]; floats uniform over
/// [-100, 100] in steps of 0.01, printed with two decimals. Values are
/// separated by single spaces. Draws one uniform_int per value, in order.
std::string draw_input(std::span<const lang::Type> shape, SeededRng& rng);

struct GeneratedSuite {
  /// Unique texts, in retention order.
  std::vector<std::string> inputs;
  /// Sorted; includes kEntryGoal once anything ran.
  std::vector<lang::BranchId> covered;
};

/// Draws `budget` candidate inputs and keeps each one that covers a goal not
/// yet covered. Programs without reads yield exactly [""].
GeneratedSuite generate_suite(const lang::Program& program, std::size_t budget,
                              SeededRng& rng,
                              std::uint64_t fuel = lang::kDefaultFuel);

/// Union by exact text: tp's inputs, then tq's inputs not already present.
std::vector<std::string> merge_suites(const GeneratedSuite& tp,
                                      const GeneratedSuite& tq);

struct Signature {
  lang::ExecStatus status = lang::ExecStatus::kCompleted;
  std::string stdout_text;
  bool operator==(const Signature&) const = default;
};

struct BehaviorReport {
  std::vector<Signature> entries;
};

BehaviorReport behavior_report(const lang::Program& program,
                               std::span<const std::string> inputs,
                               std::uint64_t fuel = lang::kDefaultFuel);

/// Fraction of positions whose signatures differ. Reports must have equal,
/// nonzero length.
double report_distance(const BehaviorReport& a, const BehaviorReport& b);

struct PairDistance {
  double distance = 0.0;
  std::size_t differing = 0;
  std::vector<std::string> merged;
};

/// Builds T_P and T_Q from the same seed (so the distance is symmetric and
/// d(p, p) = 0), merges them, and compares both programs on the union.
PairDistance testgen_pair(const lang::Program& p, const lang::Program& q,
                          std::size_t budget, std::uint64_t seed,
                          std::uint64_t fuel = lang::kDefaultFuel);

double testgen_distance(const lang::Program& p, const lang::Program& q,
                        std::size_t budget, std::uint64_t seed,
                        std::uint64_t fuel = lang::kDefaultFuel);

/// Seed for the unordered pair (i, j), i < j.
using PairSeed = std::function<std::uint64_t(std::size_t, std::size_t)>;

/// Seeds derived from a master seed and the two indices.
PairSeed index_pair_seeds(std::uint64_t master);

/// Symmetric matrix of pair results; diagonal entries are empty with distance 0.
struct DistanceMatrix {
  std::size_t size = 0;
  std::vector<PairDistance> cells;

  const PairDistance& at(std::size_t i, std::size_t j) const {
    return cells[i * size + j];
  }
};

/// Each unordered pair is computed once (one task per pair, each task the
/// only writer of its two cells) and mirrored.
DistanceMatrix pairwise_distances(std::span<const lang::Program> patches,
                                  std::size_t budget, const PairSeed& seeds,
                                  std::uint64_t fuel, Jobs jobs);

DistanceMatrix pairwise_distances_serial(std::span<const lang::Program> patches,
                                         std::size_t budget,
                                         const PairSeed& seeds,
                                         std::uint64_t fuel);

/// Row sums of the matrix.
std::vector<double> diversity_from(const DistanceMatrix& matrix);

/// Sum over j != member of the pair distance, with index-derived pair seeds.
double testgen_diversity(std::size_t member,
                         std::span<const lang::Program> patches,
                         std::size_t budget, std::uint64_t seed,
                         std::uint64_t fuel = lang::kDefaultFuel);

/// suite.txt: a "# merged suite: N inputs" header, then one input per line.
void write_suite(const std::filesystem::path& path,
                 std::span<const std::string> inputs);
std::vector<std::string> read_suite(const std::filesystem::path& path);

}  // namespace divrepair::testgen

#endif  // DIVREPAIR_TESTGEN_TESTGEN_HPP_
