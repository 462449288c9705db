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

#ifndef DIVREPAIR_EVAL_REPORT_HPP_
#define DIVREPAIR_EVAL_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "divrepair/common/parallel.hpp"
#include "divrepair/harness/test_case.hpp"
#include "divrepair/invariants/invariant.hpp"
#include "divrepair/search/repair.hpp"
#include "divrepair/testgen/testgen.hpp"

namespace divrepair::eval {

/// A post-initialization patch, already applied to the original program.
struct EvalPatch {
  std::string id;
  lang::Program program;
};

/// Rebuilds the patched programs of a run's search-phase patches. Throws
/// divrepair::Error if a recorded patch no longer applies or no longer
/// passes the white-box suite.
std::vector<EvalPatch> replay_patches(const search::RunRecord& record,
                                      const lang::Program& original,
                                      const harness::TestSuite& whitebox);

struct PatchVerdict {
  std::string id;
  std::size_t failed_blackbox = 0;

  bool correct() const { return failed_blackbox == 0; }
  bool operator==(const PatchVerdict&) const = default;
};

struct CorrectnessRow {
  std::string bug;
  search::Technique technique = search::Technique::kGenProg;
  std::vector<PatchVerdict> patches;

  std::size_t total() const { return patches.size(); }
  std::size_t correct() const;
  bool operator==(const CorrectnessRow&) const = default;
};

/// Runs every patch on the held-out suite only.
CorrectnessRow evaluate_correctness(std::string bug, search::Technique technique,
                                    std::span<const EvalPatch> patches,
                                    const harness::TestSuite& blackbox,
                                    std::uint64_t fuel = lang::kDefaultFuel);

enum class Metric { kInvariant, kTestgen };

std::string_view to_string(Metric m);
/// "invariant" or "testgen"; throws divrepair::Error otherwise.
Metric parse_metric(std::string_view name);

/// What the diversity metrics need to know about the bug.
struct DiversityContext {
  std::string bug;
  const lang::Program* original = nullptr;
  const harness::TestSuite* whitebox = nullptr;
  std::size_t min_support = inv::kDefaultMinSupport;
  std::size_t testgen_budget = testgen::kDefaultBudget;
  std::uint64_t seed = 0;
  std::uint64_t fuel = lang::kDefaultFuel;
  Jobs jobs;
  /// When set, merged testgen suites go to <dir>/<bug>/<technique>/suites.txt.
  std::optional<std::filesystem::path> suite_dir;
};

struct DiversityRow {
  std::string bug;
  search::Technique technique = search::Technique::kGenProg;
  Metric metric = Metric::kInvariant;
  std::vector<std::string> ids;
  std::vector<double> values;

  /// Arithmetic mean; empty for an empty patch set.
  std::optional<double> mean() const;
  bool operator==(const DiversityRow&) const = default;
};

/// Key naming a patched program by content, used to name pairs and derive
/// their seeds. Equal sources give equal keys.
std::string content_key(const lang::Program& program);

/// Seed for the testgen pair (a, b): symmetric in its two keys.
std::uint64_t pair_seed(std::uint64_t master, std::string_view bug,
                        std::string_view key_a, std::string_view key_b);

/// Diversity of every patch against the rest of its set. Textually identical
/// patches stay separate members; each distinct pair of sources is measured
/// once.
DiversityRow evaluate_diversity(search::Technique technique,
                                std::span<const EvalPatch> patches,
                                Metric metric, const DiversityContext& ctx);

/// One measured pair of distinct sources with its merged suite.
struct PairSuite {
  /// "<key>-<key>", keys in ascending order.
  std::string pair;
  double distance = 0.0;
  std::size_t differing = 0;
  std::vector<std::string> inputs;

  bool operator==(const PairSuite&) const = default;
};

/// All pairs of a bug in one file. Each block is a "## pair <name> distance
/// <d> differing <k>" line followed by the suite.txt form of its inputs.
/// Distances are written in shortest round-trip form.
void write_pair_suites(const std::filesystem::path& path,
                       std::span<const PairSuite> pairs);
std::vector<PairSuite> read_pair_suites(const std::filesystem::path& path);

/// The Fisher p-value for one correct/incorrect contingency.
struct FisherLine {
  std::string label;
  std::size_t genprog_correct = 0;
  std::size_t genprog_total = 0;
  std::size_t divgp_correct = 0;
  std::size_t divgp_total = 0;
  double p = 1.0;
  bool degenerate = false;
};

/// Pooled line first (label "pooled"), then one per bug in row order.
std::vector<FisherLine> fisher_lines(std::span<const CorrectnessRow> rows);

/// Writes reports/correctness.csv, reports/diversity.csv and
/// reports/summary.md under `out`. Rows are sorted by bug, technique and
/// metric, so the output depends only on the row contents.
void render_reports(std::span<const CorrectnessRow> correctness,
                    std::span<const DiversityRow> diversity,
                    const std::filesystem::path& out);

/// "x/n" cell text.
std::string ratio(std::size_t x, std::size_t n);
/// Fixed six-decimal text, or the placeholder "\u2014" when absent.
std::string format_mean(std::optional<double> mean);

}  // namespace divrepair::eval

#endif  // DIVREPAIR_EVAL_REPORT_HPP_
