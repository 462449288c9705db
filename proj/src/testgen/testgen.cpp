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

#include "divrepair/testgen/testgen.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_set>

#include "divrepair/common/errors.hpp"

namespace divrepair::testgen {
namespace {

void collect_reads(const lang::Block& block, const lang::Function& fn,
                   std::vector<lang::Type>& out) {
  for (const lang::Stmt& s : block) {
    if (s.kind == lang::StmtKind::kRead) {
      const auto vars = fn.variables();
      auto it = std::find_if(vars.begin(), vars.end(),
                             [&](const lang::VarDecl& d) { return d.name == s.target; });
      out.push_back(it == vars.end() ? lang::Type::kInt : it->type);
    }
    collect_reads(s.then_body, fn, out);
    collect_reads(s.else_body, fn, out);
  }
}

std::string hundredths(std::int64_t v) {
  std::string text = v < 0 ? "-" : "";
  const std::int64_t a = v < 0 ? -v : v;
  text += std::to_string(a / 100);
  text += '.';
  const std::int64_t frac = a % 100;
  if (frac < 10) text += '0';
  text += std::to_string(frac);
  return text;
}

}  // namespace

std::vector<lang::Type> input_shape(const lang::Program& program) {
  std::vector<lang::Type> shape;
  const lang::Function& main_fn =
      program.functions.at(static_cast<std::size_t>(program.main_index));
  collect_reads(main_fn.body, main_fn, shape);
  return shape;
}

std::string draw_input(std::span<const lang::Type> shape, SeededRng& rng) {
  std::string text;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (k) text += ' ';
    if (shape[k] == lang::Type::kInt) {
      text += std::to_string(rng.uniform_int(-100, 100));
    } else {
      text += hundredths(rng.uniform_int(-10000, 10000));
    }
  }
  return text;
}

GeneratedSuite generate_suite(const lang::Program& program, std::size_t budget,
                              SeededRng& rng, std::uint64_t fuel) {
  if (budget < 1) throw Error("test generation budget must be at least 1");
  GeneratedSuite suite;
  std::set<lang::BranchId> covered;
  auto run = [&](const std::string& input) {
    const lang::ExecOutcome out = lang::execute(program, input, fuel, false);
    bool gained = covered.insert(kEntryGoal).second;
    for (const lang::BranchId& b : out.coverage) gained |= covered.insert(b).second;
    return gained;
  };

  const std::vector<lang::Type> shape = input_shape(program);
  if (shape.empty()) {
    run("");
    suite.inputs.push_back("");
  } else {
    std::unordered_set<std::string> seen;
    for (std::size_t k = 0; k < budget; ++k) {
      std::string input = draw_input(shape, rng);
      if (!seen.insert(input).second) continue;
      if (run(input)) suite.inputs.push_back(std::move(input));
    }
  }
  suite.covered.assign(covered.begin(), covered.end());
  return suite;
}

std::vector<std::string> merge_suites(const GeneratedSuite& tp,
                                      const GeneratedSuite& tq) {
  std::vector<std::string> merged;
  std::unordered_set<std::string> seen;
  for (const auto* suite : {&tp, &tq}) {
    for (const std::string& input : suite->inputs) {
      if (seen.insert(input).second) merged.push_back(input);
    }
  }
  return merged;
}

BehaviorReport behavior_report(const lang::Program& program,
                               std::span<const std::string> inputs,
                               std::uint64_t fuel) {
  BehaviorReport report;
  report.entries.reserve(inputs.size());
  for (const std::string& input : inputs) {
    lang::ExecOutcome out = lang::execute(program, input, fuel, false);
    report.entries.push_back({out.status, std::move(out.stdout_text)});
  }
  return report;
}

double report_distance(const BehaviorReport& a, const BehaviorReport& b) {
  if (a.entries.size() != b.entries.size()) {
    throw LengthMismatch(a.entries.size(), b.entries.size());
  }
  if (a.entries.empty()) throw Error("behavior reports are empty");
  std::size_t differing = 0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    differing += !(a.entries[i] == b.entries[i]);
  }
  return static_cast<double>(differing) / static_cast<double>(a.entries.size());
}

PairDistance testgen_pair(const lang::Program& p, const lang::Program& q,
                          std::size_t budget, std::uint64_t seed,
                          std::uint64_t fuel) {
  SeededRng rng_p(seed);
  SeededRng rng_q(seed);
  const GeneratedSuite tp = generate_suite(p, budget, rng_p, fuel);
  const GeneratedSuite tq = generate_suite(q, budget, rng_q, fuel);
  PairDistance out;
  out.merged = merge_suites(tp, tq);
  const BehaviorReport rp = behavior_report(p, out.merged, fuel);
  const BehaviorReport rq = behavior_report(q, out.merged, fuel);
  for (std::size_t i = 0; i < out.merged.size(); ++i) {
    out.differing += !(rp.entries[i] == rq.entries[i]);
  }
  out.distance = static_cast<double>(out.differing) /
                 static_cast<double>(out.merged.size());
  return out;
}

double testgen_distance(const lang::Program& p, const lang::Program& q,
                        std::size_t budget, std::uint64_t seed,
                        std::uint64_t fuel) {
  return testgen_pair(p, q, budget, seed, fuel).distance;
}

PairSeed index_pair_seeds(std::uint64_t master) {
  return [master](std::size_t i, std::size_t j) {
    const std::string a = std::to_string(std::min(i, j));
    const std::string b = std::to_string(std::max(i, j));
    return derive_seed(master, {a, b});
  };
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> pairs_of(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

DistanceMatrix empty_matrix(std::size_t n) {
  DistanceMatrix m;
  m.size = n;
  m.cells.resize(n * n);
  return m;
}

}  // namespace

DistanceMatrix pairwise_distances(std::span<const lang::Program> patches,
                                  std::size_t budget, const PairSeed& seeds,
                                  std::uint64_t fuel, Jobs jobs) {
  const std::size_t n = patches.size();
  DistanceMatrix m = empty_matrix(n);
  const auto pairs = pairs_of(n);
  parallel_for(pairs.size(), jobs, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    PairDistance d = testgen_pair(patches[i], patches[j], budget, seeds(i, j), fuel);
    m.cells[j * n + i] = d;
    m.cells[i * n + j] = std::move(d);
  });
  return m;
}

DistanceMatrix pairwise_distances_serial(std::span<const lang::Program> patches,
                                         std::size_t budget,
                                         const PairSeed& seeds,
                                         std::uint64_t fuel) {
  const std::size_t n = patches.size();
  DistanceMatrix m = empty_matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m.cells[i * n + j] = testgen_pair(patches[i], patches[j], budget, seeds(i, j), fuel);
      m.cells[j * n + i] = m.cells[i * n + j];
    }
  }
  return m;
}

std::vector<double> diversity_from(const DistanceMatrix& matrix) {
  std::vector<double> out(matrix.size, 0.0);
  for (std::size_t i = 0; i < matrix.size; ++i) {
    for (std::size_t j = 0; j < matrix.size; ++j) {
      if (i != j) out[i] += matrix.at(i, j).distance;
    }
  }
  return out;
}

double testgen_diversity(std::size_t member,
                         std::span<const lang::Program> patches,
                         std::size_t budget, std::uint64_t seed,
                         std::uint64_t fuel) {
  if (member >= patches.size()) throw Error("member index out of range");
  const PairSeed seeds = index_pair_seeds(seed);
  double total = 0.0;
  for (std::size_t j = 0; j < patches.size(); ++j) {
    if (j == member) continue;
    total += testgen_distance(patches[member], patches[j], budget,
                              seeds(member, j), fuel);
  }
  return total;
}

void write_suite(const std::filesystem::path& path,
                 std::span<const std::string> inputs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "# merged suite: " << inputs.size() << " inputs\n";
  for (const std::string& input : inputs) out << input << '\n';
}

std::vector<std::string> read_suite(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string header;
  std::getline(in, header);
  const std::string prefix = "# merged suite: ";
  if (header.rfind(prefix, 0) != 0) throw Error("bad suite header in " + path.string());
  const std::size_t count = std::stoul(header.substr(prefix.size()));
  std::vector<std::string> inputs;
  inputs.reserve(count);
  std::string line;
  for (std::size_t k = 0; k < count; ++k) {
    if (!std::getline(in, line)) throw Error("truncated suite " + path.string());
    inputs.push_back(line);
  }
  return inputs;
}

}  // namespace divrepair::testgen
