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

#include "divrepair/invariants/profile.hpp"

#include <algorithm>

#include "divrepair/common/errors.hpp"

namespace divrepair::inv {
namespace {

struct Check {
  std::size_t invariant;
  std::size_t lhs;
  std::size_t rhs;
};

/// For each point of the candidate, the invariants that live there with
/// their operands resolved to value indices.
std::vector<std::vector<Check>> bind_checks(const std::vector<lang::PointLayout>& layouts,
                                     std::span<const Invariant> invariants) {
  std::vector<std::vector<Check>> checks(layouts.size());
  for (std::size_t p = 0; p < layouts.size(); ++p) {
    const auto& vars = layouts[p].variables;
    auto index_of = [&](const std::string& name) {
      return static_cast<std::size_t>(
          std::find(vars.begin(), vars.end(), name) - vars.begin());
    };
    for (std::size_t i = 0; i < invariants.size(); ++i) {
      const Invariant& inv = invariants[i];
      if (!(inv.point == layouts[p].point)) continue;
      const std::size_t lhs = index_of(inv.operands[0]);
      const std::size_t rhs = inv.binary() ? index_of(inv.operands[1]) : 0;
      // Statement edits never change declarations, so a missing operand
      // means the invariant belongs to another program; skip it.
      if (lhs >= vars.size() || (inv.binary() && rhs >= vars.size())) continue;
      checks[p].push_back({i, lhs, rhs});
    }
  }
  return checks;
}

/// Reach/violate flags for one traced run: 1 = reached, 2 = violated.
void observe(const lang::Trace& trace,
             const std::vector<std::vector<Check>>& checks,
             std::span<const Invariant> invariants,
             std::vector<std::uint8_t>& flags) {
  for (const lang::TraceSample& s : trace.samples) {
    for (const Check& c : checks[s.point]) {
      const Invariant& inv = invariants[c.invariant];
      const double rhs = inv.binary() ? s.values[c.rhs] : 0.0;
      flags[c.invariant] |= inv.holds(s.values[c.lhs], rhs) ? 1 : 3;
    }
  }
}

char encode(std::uint8_t flags) {
  if (flags & 2) return 'V';
  if (flags & 1) return 'S';
  return 'U';
}

InvariantProfile assemble(const std::vector<std::uint8_t>& pos,
                          const std::vector<std::uint8_t>& neg) {
  InvariantProfile out;
  out.chars.reserve(pos.size() * 2);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    out.chars += encode(pos[i]);
    out.chars += encode(neg[i]);
  }
  return out;
}

}  // namespace

InvariantProfile profile(const lang::Program& candidate,
                         std::span<const Invariant> invariants,
                         const harness::TestSuite& positives,
                         const harness::TestSuite& negatives,
                         std::uint64_t fuel) {
  const auto checks = bind_checks(lang::program_points(candidate), invariants);
  std::vector<std::uint8_t> pos(invariants.size(), 0);
  std::vector<std::uint8_t> neg(invariants.size(), 0);
  for (const harness::TestCase& t : positives) {
    observe(*lang::execute(candidate, t.input, fuel, true).trace, checks,
            invariants, pos);
  }
  for (const harness::TestCase& t : negatives) {
    observe(*lang::execute(candidate, t.input, fuel, true).trace, checks,
            invariants, neg);
  }
  return assemble(pos, neg);
}

std::vector<InvariantProfile> profile_population(
    std::span<const lang::Program> candidates,
    std::span<const Invariant> invariants, const harness::TestSuite& positives,
    const harness::TestSuite& negatives, std::uint64_t fuel, Jobs jobs) {
  const std::size_t tests = positives.size() + negatives.size();
  const std::size_t width = invariants.size();
  std::vector<std::vector<std::vector<Check>>> checks(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    checks[c] = bind_checks(lang::program_points(candidates[c]), invariants);
  }
  // Flags per (candidate, test); merged per class afterwards.
  std::vector<std::uint8_t> flags(candidates.size() * tests * width, 0);
  parallel_for(candidates.size() * tests, jobs, [&](std::size_t k) {
    const std::size_t c = k / tests;
    const std::size_t t = k % tests;
    const harness::TestCase& test =
        t < positives.size() ? positives[t] : negatives[t - positives.size()];
    std::vector<std::uint8_t> local(width, 0);
    observe(*lang::execute(candidates[c], test.input, fuel, true).trace,
            checks[c], invariants, local);
    std::copy(local.begin(), local.end(), flags.begin() + static_cast<std::ptrdiff_t>(k * width));
  });
  std::vector<InvariantProfile> out;
  out.reserve(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    std::vector<std::uint8_t> pos(width, 0);
    std::vector<std::uint8_t> neg(width, 0);
    for (std::size_t t = 0; t < tests; ++t) {
      auto& target = t < positives.size() ? pos : neg;
      const std::uint8_t* row = &flags[(c * tests + t) * width];
      for (std::size_t i = 0; i < width; ++i) target[i] |= row[i];
    }
    out.push_back(assemble(pos, neg));
  }
  return out;
}

std::size_t invariant_distance(const InvariantProfile& a,
                               const InvariantProfile& b) {
  if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a.chars[i] != b.chars[i];
  return d;
}

std::size_t invariant_diversity(std::size_t member,
                                std::span<const InvariantProfile> population) {
  if (member >= population.size()) throw Error("member index out of range");
  std::size_t total = 0;
  for (std::size_t j = 0; j < population.size(); ++j) {
    if (j != member) total += invariant_distance(population[member], population[j]);
  }
  return total;
}

std::vector<std::size_t> population_diversity_serial(
    std::span<const InvariantProfile> population) {
  std::vector<std::size_t> out;
  out.reserve(population.size());
  for (std::size_t i = 0; i < population.size(); ++i) {
    out.push_back(invariant_diversity(i, population));
  }
  return out;
}

std::vector<std::size_t> population_diversity(
    std::span<const InvariantProfile> population, Jobs jobs) {
  std::vector<std::size_t> out(population.size(), 0);
  parallel_for(population.size(), jobs, [&](std::size_t i) {
    out[i] = invariant_diversity(i, population);
  });
  return out;
}

}  // namespace divrepair::inv
