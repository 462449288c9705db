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

#include <fstream>

#include "divrepair/common/errors.hpp"
#include "divrepair/harness/fitness.hpp"
#include "divrepair/harness/test_case.hpp"
#include "divrepair/lang/parser.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

namespace {

using namespace divrepair;
using harness::TestResult;
using testing::make_test;

const char* kDouble = "func main() { int x; read x; print x * 2; }";
const char* kBuggyDouble =
    "func main() { int x; read x; if x > 5 { print x; } else { print x * 2; } }";

harness::TestSuite double_suite() {
  return {make_test("a", "1", "2\n"), make_test("b", "2", "4\n"),
          make_test("c", "3", "6\n"), make_test("d", "4", "8\n"),
          make_test("e", "5", "10\n"), make_test("f", "6", "12\n"),
          make_test("g", "7", "14\n")};
}

void write(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

TEST_CASE("run_test: pass, mismatch, crash and timeout") {
  const auto p = lang::parse(kDouble);
  CHECK(harness::run_test(p, make_test("t", "3", "6\n")) == TestResult::kPass);
  CHECK(harness::run_test(p, make_test("t", "3", "6")) == TestResult::kFail);
  const auto silent = lang::parse("func main() { }");
  CHECK(harness::run_test(silent, make_test("t", "", "3\n")) == TestResult::kFail);
  const auto loop = lang::parse("func main() { while 1 { } }");
  CHECK(harness::run_test(loop, make_test("t", "", "")) == TestResult::kFail);
  // A crash fails even when the output so far matches.
  const auto crash = lang::parse("func main() { print 1; print 1 / 0; }");
  CHECK(harness::run_test(crash, make_test("t", "", "1\n")) == TestResult::kFail);
}

TEST_CASE("classify_tests: partitions by the original's results") {
  const auto buggy = lang::parse(kBuggyDouble);
  const auto c = harness::classify_tests(buggy, double_suite());
  CHECK(c.positives.size() == 5);
  CHECK(c.negatives.size() == 2);
  CHECK(c.negatives[0].id == "f");
  CHECK(c.negatives[0].role == harness::Role::kNegative);
  CHECK(c.positives[0].role == harness::Role::kPositive);

  CHECK_THROWS_AS(harness::classify_tests(lang::parse(kDouble), double_suite()),
                  NoFailingTests);

  const auto never = lang::parse("func main() { print 0; }");
  const auto all = harness::classify_tests(never, double_suite());
  CHECK(all.positives.empty());
  CHECK(all.negatives.size() == 7);
}

TEST_CASE("classify_tests: every corpus bug has a failing white-box test") {
  for (const auto& id : testing::bug_ids()) {
    CAPTURE(id);
    const auto dir = testing::corpus_dir() / id;
    const auto c = harness::classify_tests(
        lang::parse_file(dir / "program.mini"),
        harness::load_suite(dir / "tests" / "whitebox", harness::Origin::kWhitebox));
    CHECK(!c.negatives.empty());
    CHECK(!c.positives.empty());
  }
}

TEST_CASE("fitness: weighted sum") {
  const harness::FitnessWeights w{1.0, 10.0};
  const harness::TestSuite pos = {make_test("p1", "1", "2\n"), make_test("p2", "2", "4\n"),
                                  make_test("p3", "3", "6\n"), make_test("p4", "4", "8\n"),
                                  make_test("p5", "5", "10\n")};
  const harness::TestSuite neg = {make_test("n1", "6", "12\n"), make_test("n2", "7", "15\n")};
  // Passes all five positives and one negative.
  CHECK(harness::fitness(lang::parse(kDouble), pos, neg, w) == 15.0);
  // Passes the five positives only.
  CHECK(harness::fitness(lang::parse(kBuggyDouble), pos, neg, w) == 5.0);
  // Passes nothing.
  CHECK(harness::fitness(lang::parse("func main() { }"), pos, neg, w) == 0.0);
  CHECK(harness::max_fitness(5, 2, w) == 25.0);
  const auto r = harness::evaluate(lang::parse(kDouble), pos, neg, w);
  CHECK(r.positives_passed == 5);
  CHECK(r.negatives_passed == 1);
  CHECK(r.value == 15.0);
}

TEST_CASE("fitness: weights validation") {
  CHECK_NOTHROW(harness::validate({0.0, 1.0}));
  CHECK_THROWS_AS(harness::validate({0.0, 0.0}), Error);
  CHECK_THROWS_AS(harness::validate({-1.0, 5.0}), Error);
}

TEST_CASE("fitness: maximal iff every test passes") {
  const auto dir = testing::corpus_dir() / "median-b1";
  const auto suite = harness::load_suite(dir / "tests" / "whitebox", harness::Origin::kWhitebox);
  const auto c = harness::classify_tests(lang::parse_file(dir / "program.mini"), suite);
  const harness::FitnessWeights w;
  const double top = harness::max_fitness(c.positives.size(), c.negatives.size(), w);
  CHECK(harness::fitness(lang::parse_file(dir / "reference.mini"), c.positives,
                         c.negatives, w) == top);
  CHECK(harness::fitness(lang::parse_file(dir / "program.mini"), c.positives,
                         c.negatives, w) < top);
}

TEST_CASE("evaluate_population: parallel equals serial") {
  std::vector<lang::Program> programs;
  for (const char* src : {kDouble, kBuggyDouble, "func main() { }",
                          "func main() { while 1 { } }"}) {
    programs.push_back(lang::parse(src));
  }
  const auto c = harness::classify_tests(programs[1], double_suite());
  const harness::FitnessWeights w;
  const auto serial = harness::evaluate_population_serial(programs, c.positives,
                                                         c.negatives, w, 2000);
  for (int jobs : {1, 2, 4}) {
    CHECK(harness::evaluate_population(programs, c.positives, c.negatives, w, 2000,
                                       Jobs{jobs}) == serial);
  }
  CHECK(serial[0].value == harness::max_fitness(5, 2, w));
  CHECK(serial[3].value == 0.0);
}

TEST_CASE("load_suite: pairs files by id in order") {
  testing::TempDir tmp("suite");
  write(tmp.path() / "b.in", "2\n");
  write(tmp.path() / "b.out", "4\n");
  write(tmp.path() / "a.in", "1\n");
  write(tmp.path() / "a.out", "2\n");
  const auto suite = harness::load_suite(tmp.path(), harness::Origin::kBlackbox);
  REQUIRE(suite.size() == 2);
  CHECK(suite[0].id == "a");
  CHECK(suite[0].input == "1\n");
  CHECK(suite[1].expected_output == "4\n");
  CHECK(suite[1].origin == harness::Origin::kBlackbox);

  write(tmp.path() / "c.in", "3\n");
  CHECK_THROWS_AS(harness::load_suite(tmp.path(), harness::Origin::kBlackbox), Error);

  testing::TempDir empty("empty-suite");
  CHECK_THROWS_AS(harness::load_suite(empty.path(), harness::Origin::kWhitebox), Error);
}

}  // namespace
