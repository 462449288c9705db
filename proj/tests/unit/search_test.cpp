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

#include <algorithm>
#include <set>

#include "divrepair/common/errors.hpp"
#include "divrepair/lang/parser.hpp"
#include "divrepair/lang/printer.hpp"
#include "divrepair/search/repair.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

namespace {

using namespace divrepair;
using search::Edit;
using search::Patch;
using testing::make_test;

// ids: read 1, if 2, print 3, print 4, print 5, if 6, print 7
const char* kBranchy =
    "func main() { int x; read x;"
    " if x > 0 { print 1; } else { print 0; }"
    " print 9;"
    " if x > 100 { print 5; } }";

search::BugInput load_bug(const std::string& id) {
  const auto dir = testing::corpus_dir() / id;
  return {id, lang::parse_file(dir / "program.mini"),
          harness::load_suite(dir / "tests" / "whitebox", harness::Origin::kWhitebox)};
}

search::SearchConfig small_config(std::uint64_t seed) {
  search::SearchConfig c;
  c.pop_size = 12;
  c.max_generations = 4;
  c.seed = seed;
  c.fuel = 5000;
  return c;
}

TEST_CASE("localize: weighting scheme") {
  const auto p = lang::parse(kBranchy);
  const harness::TestSuite pos = {make_test("p", "1", "1\n9\n")};
  const harness::TestSuite neg = {make_test("n", "-1", "7\n9\n")};
  const auto w = search::localize(p, pos, neg);
  CHECK(w.at(4) == 1.0);
  for (lang::StatementId id : {1, 2, 5, 6}) CHECK(w.at(id) == 0.1);
  CHECK(w.at(3) == 0.0);
  CHECK(w.at(7) == 0.0);
  CHECK(w.size() == 7);
}

TEST_CASE("localize: negatives that run nothing") {
  const auto p = lang::parse("func main() { int x; x = 1 / 0; print x; }");
  const harness::TestSuite neg = {make_test("n", "", "1\n")};
  // The crashing statement itself still executes, so it carries weight.
  CHECK(search::localize(p, {}, neg).at(1) == 1.0);
  const auto empty = lang::parse("func main() { }");
  CHECK_THROWS_AS(search::localize(empty, {}, neg), NoLocalizableFault);
}

TEST_CASE("Edit: text form round trips") {
  for (const Edit& e : {Edit::append(3, 7), Edit::replace(3, 7), Edit::remove(12)}) {
    CHECK(Edit::parse(e.to_string()) == e);
  }
  CHECK(Edit::append(3, 7).to_string() == "append(3,7)");
  CHECK(Edit::remove(3).to_string() == "delete(3)");
  CHECK_THROWS_AS(Edit::parse("delete(3,4)"), Error);
  CHECK_THROWS_AS(Edit::parse("swap(1,2)"), Error);
  CHECK_THROWS_AS(Edit::parse("append(1)"), Error);
}

TEST_CASE("apply_edits: delete the only statement") {
  const auto p = lang::parse("func main() { print 1; }");
  const std::vector<Edit> edits = {Edit::remove(1)};
  const auto q = search::apply_edits(p, edits);
  REQUIRE(q);
  CHECK(q->functions[0].body.empty());
  const auto out = lang::execute(*q, "", 100, false);
  CHECK(out.status == lang::ExecStatus::kCompleted);
  CHECK(out.stdout_text.empty());
}

TEST_CASE("apply_edits: append adds one statement with a fresh id") {
  const auto p = lang::parse("func main() { print 0; print 1; }");
  const std::vector<Edit> edits = {Edit::append(2, 1)};
  const auto q = search::apply_edits(p, edits);
  REQUIRE(q);
  CHECK(lang::statement_count(*q) == lang::statement_count(p) + 1);
  CHECK(lang::execute(*q, "", 100, false).stdout_text == "0\n1\n0\n");
  CHECK(q->functions[0].body[2].id > lang::max_statement_id(p));
}

TEST_CASE("apply_edits: stale targets and ill-formed results") {
  const auto p = lang::parse("func main() { int x; read x; print x; }");
  // The second edit targets a statement that is already gone.
  const std::vector<Edit> stale = {Edit::remove(2), Edit::replace(2, 1)};
  const auto q = search::apply_edits(p, stale);
  REQUIRE(q);
  CHECK(lang::pretty_print(*q) == lang::pretty_print(*search::apply_edits(
                                      p, std::vector<Edit>{Edit::remove(2)})));
  const auto r = lang::parse(
      "func h(): int { return 1; }\n"
      "func main() { float f; f = 0.5; print h(); }");
  // main has no return type, so a copied `return 1;` does not check.
  const std::vector<Edit> bad = {Edit::append(3, 1)};
  CHECK_FALSE(search::apply_edits(r, bad));
}

TEST_CASE("mutate: deterministic, appends one edit, leaves input alone") {
  const auto bug = load_bug("median-b1");
  const auto cls = harness::classify_tests(bug.original, bug.whitebox);
  const auto w = search::localize(bug.original, cls.positives, cls.negatives);
  Patch base;
  base.edits = {Edit::remove(5)};
  const Patch before = base;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SeededRng a(seed), b(seed);
    const Patch x = search::mutate(base, bug.original, w, a);
    const Patch y = search::mutate(base, bug.original, w, b);
    CHECK(x == y);
    CHECK(base == before);
    REQUIRE(x.edits.size() == 2);
    CHECK(x.edits[0] == base.edits[0]);
    CHECK(w.at(x.edits[1].target) > 0.0);
    CHECK(search::apply_edits(bug.original, x.edits));
  }
}

TEST_CASE("mutate: targets follow the weights") {
  const auto p = lang::parse(kBranchy);
  search::FaultWeights w = {{1, 0.0}, {2, 0.0}, {3, 0.0}, {4, 1.0},
                            {5, 0.1}, {6, 0.0}, {7, 0.0}};
  SeededRng rng(7);
  std::size_t hits4 = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const Patch m = search::mutate(Patch{}, p, w, rng);
    REQUIRE(m.edits.size() == 1);
    const auto t = m.edits[0].target;
    CHECK((t == 4 || t == 5));
    hits4 += t == 4;
  }
  // Expected share 1/1.1; a generous band for the binomial spread.
  const double share = static_cast<double>(hits4) / n;
  CHECK(share > 0.87);
  CHECK(share < 0.95);
}

TEST_CASE("crossover: splice examples and conservation") {
  const Edit e1 = Edit::remove(1), e2 = Edit::remove(2), f1 = Edit::append(3, 4);
  Patch a, b;
  a.edits = {e1, e2};
  b.edits = {f1};
  auto [c, d] = search::crossover_at(a, b, 1, 0);
  CHECK(c.edits == std::vector<Edit>{e1, f1});
  CHECK(d.edits == std::vector<Edit>{e2});
  SeededRng one(1);
  auto [x, y] = search::crossover(Patch{}, Patch{}, one);
  CHECK(x.edits.empty());
  CHECK(y.edits.empty());

  SeededRng rng(11);
  for (int i = 0; i < 200; ++i) {
    Patch p, q;
    for (std::size_t k = 0, n = rng.index(5); k < n; ++k) p.edits.push_back(Edit::remove(rng.index(9)));
    for (std::size_t k = 0, n = rng.index(5); k < n; ++k) q.edits.push_back(Edit::append(rng.index(9), 1));
    auto [u, v] = search::crossover(p, q, rng);
    std::multiset<std::string> parents, children;
    for (const auto* s : {&p, &q}) for (const auto& e : s->edits) parents.insert(e.to_string());
    for (const auto* s : {&u, &v}) for (const auto& e : s->edits) children.insert(e.to_string());
    CHECK(parents == children);
  }
}

TEST_CASE("select: dominance and replay") {
  search::SelectionParams params;
  params.max_fitness = 20;
  const std::vector<search::Contestant> pop = {{15, 0}, {5, 0}};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeededRng mirror(seed);
    const auto d1 = mirror.index(2);
    const auto d2 = mirror.index(2);
    SeededRng rng(seed);
    CHECK(search::select(pop, params, rng) == ((d1 == 0 || d2 == 0) ? 0u : 1u));
  }

  search::SelectionParams mixed;
  mixed.lambda = 0.5;
  mixed.max_fitness = 20;
  mixed.max_diversity = 8;
  const std::vector<search::Contestant> div = {{10, 0}, {10, 4}};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeededRng mirror(seed);
    const auto d1 = mirror.index(2);
    const auto d2 = mirror.index(2);
    SeededRng rng(seed);
    CHECK(search::select(div, mixed, rng) == ((d1 == 1 || d2 == 1) ? 1u : 0u));
  }

  const std::vector<search::Contestant> tie = {{10, 0}, {10, 0}};
  std::set<std::size_t> winners;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SeededRng a(seed), b(seed);
    const auto w = search::select(tie, params, a);
    CHECK(w == search::select(tie, params, b));
    winners.insert(w);
  }
  CHECK(winners.size() == 2);
  SeededRng rng(0);
  CHECK_THROWS_AS(search::select(std::span<const search::Contestant>{}, params, rng), Error);
}

TEST_CASE("selection_score: formula") {
  search::SelectionParams p;
  p.lambda = 0.25;
  p.max_fitness = 10;
  p.max_diversity = 4;
  CHECK(search::selection_score({5, 2}, p) == doctest::Approx(0.75 * 0.5 + 0.25 * 0.5));
  p.max_diversity = 0;
  CHECK(search::selection_score({5, 2}, p) == doctest::Approx(0.75 * 0.5));
}

TEST_CASE("SearchConfig: validation") {
  search::SearchConfig c;
  CHECK_NOTHROW(c.validate());
  c.pop_size = 1;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.tournament_k = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.lambda = 1.5;
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK(search::parse_technique("divgp") == search::Technique::kDivGP);
  CHECK_THROWS_AS(search::parse_technique("gp"), Error);
}

TEST_CASE("repair: no generations leaves only discarded patches") {
  const auto bug = load_bug("smallest-b1");
  auto cfg = small_config(0);
  cfg.pop_size = 40;
  cfg.max_generations = 0;
  for (auto t : {search::Technique::kGenProg, search::Technique::kDivGP}) {
    const auto rec = search::repair(bug, cfg, t);
    CHECK(rec.generations.size() == 1);
    for (const auto& p : rec.patches) {
      CHECK(p.discarded);
      CHECK(p.patch.from_init());
    }
    CHECK(rec.search_patches().empty());
  }
}

TEST_CASE("repair: a delete fix is found and every patch replays") {
  const auto bug = load_bug("smallest-b1");
  // Offline check that the 1-edit neighbourhood holds a fix.
  const auto fix = search::apply_edits(bug.original, std::vector<Edit>{Edit::remove(8)});
  REQUIRE(fix);
  CHECK(search::passes_all(*fix, bug.whitebox));

  bool found = false;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    search::SearchConfig cfg;
    cfg.seed = seed;
    const auto rec = search::repair(bug, cfg, search::Technique::kGenProg);
    found |= !rec.search_patches().empty();
    for (const auto& p : rec.patches) {
      const auto prog = search::apply_edits(bug.original, p.patch.edits);
      REQUIRE(prog);
      CHECK(search::passes_all(*prog, bug.whitebox));
      CHECK(lang::pretty_print(*prog) == p.source);
      CHECK(p.discarded == (p.patch.generation == 0));
    }
  }
  CHECK(found);
}

TEST_CASE("repair: determinism, shared initialization, serialization") {
  const auto bug = load_bug("median-b1");
  const auto cfg = small_config(3);
  const auto g1 = search::repair(bug, cfg, search::Technique::kGenProg);
  const auto g2 = search::repair(bug, cfg, search::Technique::kGenProg, Jobs{4});
  CHECK(search::serialize(g1) == search::serialize(g2));
  const auto d1 = search::repair(bug, cfg, search::Technique::kDivGP);
  const auto d2 = search::repair(bug, cfg, search::Technique::kDivGP, Jobs{2});
  CHECK(search::serialize(d1) == search::serialize(d2));
  CHECK(search::serialize_initial_population(g1) ==
        search::serialize_initial_population(d1));
  CHECK(d1.invariant_count > 0);
  CHECK(g1.invariant_count == 0);
  CHECK(search::deserialize_run(search::serialize(d1)) == d1);
  CHECK(search::serialize(search::deserialize_run(search::serialize(d1))) ==
        search::serialize(d1));
}

TEST_CASE("repair: zero diversity weight recovers genprog selection") {
  const auto bug = load_bug("digits-b3");
  auto cfg = small_config(5);
  const auto g = search::repair(bug, cfg, search::Technique::kGenProg);
  cfg.lambda = 0.0;
  const auto d = search::repair(bug, cfg, search::Technique::kDivGP);
  REQUIRE(g.generations.size() == d.generations.size());
  for (std::size_t i = 0; i < g.generations.size(); ++i) {
    const auto& a = g.generations[i].candidates;
    const auto& b = d.generations[i].candidates;
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].edits == b[k].edits);
      CHECK(a[k].fitness == b[k].fitness);
    }
  }
  // genprog ignores lambda entirely.
  cfg.lambda = 1.0;
  auto g2 = search::repair(bug, cfg, search::Technique::kGenProg);
  g2.config.lambda = g.config.lambda;
  CHECK(g2 == g);
}

TEST_CASE("repair: bug without failing tests") {
  auto bug = load_bug("median-b1");
  bug.original = lang::parse_file(testing::corpus_dir() / "median-b1" / "reference.mini");
  CHECK_THROWS_AS(search::repair(bug, small_config(0), search::Technique::kGenProg),
                  NoFailingTests);
}

}  // namespace
