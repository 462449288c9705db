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

#include "divrepair/search/operators.hpp"

#include <algorithm>
#include <set>

#include "divrepair/common/errors.hpp"

namespace divrepair::search {
namespace {

std::set<lang::StatementId> executed_by(const lang::Program& program,
                                        const harness::TestSuite& suite,
                                        std::uint64_t fuel) {
  std::set<lang::StatementId> ids;
  lang::ExecOptions options;
  options.fuel = fuel;
  options.record_statements = true;
  for (const harness::TestCase& t : suite) {
    const auto out = lang::execute(program, t.input, options);
    ids.insert(out.statements.begin(), out.statements.end());
  }
  return ids;
}

}  // namespace

FaultWeights localize(const lang::Program& original,
                      const harness::TestSuite& positives,
                      const harness::TestSuite& negatives, std::uint64_t fuel) {
  const auto on_pos = executed_by(original, positives, fuel);
  const auto on_neg = executed_by(original, negatives, fuel);
  FaultWeights weights;
  bool any = false;
  lang::for_each_stmt(original, [&](const lang::Stmt& s) {
    double w = 0.0;
    if (on_neg.count(s.id)) w = on_pos.count(s.id) ? 0.1 : 1.0;
    weights[s.id] = w;
    any |= w > 0.0;
  });
  if (!any) throw NoLocalizableFault();
  return weights;
}

Patch mutate(const Patch& patch, const lang::Program& original,
             const FaultWeights& weights, SeededRng& rng) {
  std::vector<std::pair<lang::StatementId, double>> targets;
  double total = 0.0;
  for (const auto& [id, w] : weights) {
    if (w > 0.0) {
      targets.emplace_back(id, w);
      total += w;
    }
  }
  if (targets.empty()) throw NoLocalizableFault();
  std::vector<lang::StatementId> donors;
  lang::for_each_stmt(original, [&](const lang::Stmt& s) { donors.push_back(s.id); });

  for (int attempt = 0; attempt < kMutationRetries; ++attempt) {
    double u = rng.uniform_real() * total;
    lang::StatementId target = targets.back().first;
    for (const auto& [id, w] : targets) {
      if (u < w) {
        target = id;
        break;
      }
      u -= w;
    }
    Edit edit;
    switch (rng.index(3)) {
      case 0:
        edit = Edit::append(target, donors[rng.index(donors.size())]);
        break;
      case 1:
        edit = Edit::replace(target, donors[rng.index(donors.size())]);
        break;
      default:
        edit = Edit::remove(target);
        break;
    }
    Patch next = patch;
    next.edits.push_back(edit);
    if (apply_edits(original, next.edits)) return next;
  }
  return patch;
}

std::pair<Patch, Patch> crossover_at(const Patch& a, const Patch& b,
                                     std::size_t cut_a, std::size_t cut_b) {
  cut_a = std::min(cut_a, a.edits.size());
  cut_b = std::min(cut_b, b.edits.size());
  Patch c1 = a;
  Patch c2 = b;
  c1.edits.assign(a.edits.begin(), a.edits.begin() + static_cast<std::ptrdiff_t>(cut_a));
  c1.edits.insert(c1.edits.end(), b.edits.begin() + static_cast<std::ptrdiff_t>(cut_b),
                  b.edits.end());
  c2.edits.assign(b.edits.begin(), b.edits.begin() + static_cast<std::ptrdiff_t>(cut_b));
  c2.edits.insert(c2.edits.end(), a.edits.begin() + static_cast<std::ptrdiff_t>(cut_a),
                  a.edits.end());
  return {std::move(c1), std::move(c2)};
}

std::pair<Patch, Patch> crossover(const Patch& a, const Patch& b, SeededRng& rng) {
  const std::size_t cut_a = rng.index(a.edits.size() + 1);
  const std::size_t cut_b = rng.index(b.edits.size() + 1);
  return crossover_at(a, b, cut_a, cut_b);
}

double selection_score(const Contestant& c, const SelectionParams& params) {
  const double fit = params.max_fitness > 0.0 ? c.fitness / params.max_fitness : 0.0;
  const double div =
      params.max_diversity > 0.0 ? c.diversity / params.max_diversity : 0.0;
  return (1.0 - params.lambda) * fit + params.lambda * div;
}

std::size_t select(std::span<const Contestant> population,
                   const SelectionParams& params, SeededRng& rng) {
  if (population.empty()) throw Error("cannot select from an empty population");
  const std::size_t k = std::max<std::size_t>(1, params.tournament_k);
  std::size_t best = rng.index(population.size());
  double best_score = selection_score(population[best], params);
  for (std::size_t round = 1; round < k; ++round) {
    const std::size_t pick = rng.index(population.size());
    const double score = selection_score(population[pick], params);
    if (score > best_score || (score == best_score && rng.coin())) {
      best = pick;
      best_score = score;
    }
  }
  return best;
}

}  // namespace divrepair::search
