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
#include <cmath>
#include <set>

#include "divrepair/common/errors.hpp"
#include "divrepair/lang/parser.hpp"
#include "divrepair/testgen/testgen.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

namespace {

using namespace divrepair;
using testgen::GeneratedSuite;

const char* kSign =
    "func main() { int x; read x; if x > 0 { print 1; } else { print 0; } }";

lang::Program median(const char* file) {
  return lang::parse_file(testing::corpus_dir() / "median-b1" / file);
}

TEST_CASE("input_shape: reads of main in pre-order") {
  const auto p = lang::parse(
      "func f() { int q; read q; }\n"
      "func main() { int a; float b; read a; if a > 0 { read b; } f(); read a; }");
  CHECK(testgen::input_shape(p) ==
        std::vector<lang::Type>{lang::Type::kInt, lang::Type::kFloat, lang::Type::kInt});
}

TEST_CASE("draw_input: documented distribution and format") {
  SeededRng rng(3);
  const std::vector<lang::Type> shape = {lang::Type::kInt, lang::Type::kFloat};
  bool saw_negative = false;
  for (int i = 0; i < 2000; ++i) {
    const auto text = testgen::draw_input(shape, rng);
    const auto space = text.find(' ');
    REQUIRE(space != std::string::npos);
    CHECK(text.find(' ', space + 1) == std::string::npos);
    const long v = std::stol(text.substr(0, space));
    CHECK(v >= -100);
    CHECK(v <= 100);
    saw_negative = saw_negative || v < 0;
    const std::string f = text.substr(space + 1);
    const auto dot = f.find('.');
    REQUIRE(dot != std::string::npos);
    CHECK(f.size() - dot - 1 == 2);
    const double d = std::stod(f);
    CHECK(d >= -100.0);
    CHECK(d <= 100.0);
  }
  CHECK(saw_negative);
  SeededRng a(9), b(9);
  CHECK(testgen::draw_input(shape, a) == testgen::draw_input(shape, b));
}

TEST_CASE("generate_suite: no reads gives one empty input") {
  SeededRng rng(1);
  const auto s = testgen::generate_suite(lang::parse("func main() { print 1; }"), 200, rng);
  CHECK(s.inputs == std::vector<std::string>{""});
}

TEST_CASE("generate_suite: covers both directions of a branch") {
  SeededRng rng(2);
  const auto s = testgen::generate_suite(lang::parse(kSign), 200, rng);
  CHECK(std::binary_search(s.covered.begin(), s.covered.end(), lang::BranchId{2, true}));
  CHECK(std::binary_search(s.covered.begin(), s.covered.end(), lang::BranchId{2, false}));
  CHECK(s.inputs.size() == 2);
}

TEST_CASE("generate_suite: deterministic, unique, archive discipline") {
  for (const auto& id : testing::bug_ids()) {
    CAPTURE(id);
    const auto p = lang::parse_file(testing::corpus_dir() / id / "program.mini");
    SeededRng r1(44), r2(44);
    const auto a = testgen::generate_suite(p, 200, r1, 5000);
    const auto b = testgen::generate_suite(p, 200, r2, 5000);
    CHECK(a.inputs == b.inputs);
    CHECK(a.covered == b.covered);
    const std::set<std::string> unique(a.inputs.begin(), a.inputs.end());
    CHECK(unique.size() == a.inputs.size());
    // Replay: every retained input adds at least one new goal.
    std::set<lang::BranchId> seen;
    for (const auto& in : a.inputs) {
      const auto out = lang::execute(p, in, 5000, false);
      std::size_t before = seen.size();
      seen.insert(testgen::kEntryGoal);
      seen.insert(out.coverage.begin(), out.coverage.end());
      CHECK(seen.size() > before);
    }
    CHECK(std::vector<lang::BranchId>(seen.begin(), seen.end()) == a.covered);
  }
}

TEST_CASE("merge_suites: stable union") {
  GeneratedSuite x{{"a", "b"}, {}};
  GeneratedSuite y{{"b", "c"}, {}};
  CHECK(testgen::merge_suites(x, y) == std::vector<std::string>{"a", "b", "c"});
  CHECK(testgen::merge_suites(x, x) == x.inputs);
  GeneratedSuite e{{""}, {}};
  CHECK(testgen::merge_suites(e, e) == std::vector<std::string>{""});
}

TEST_CASE("report_distance: validation") {
  testgen::BehaviorReport a{{{lang::ExecStatus::kCompleted, "1\n"}}};
  testgen::BehaviorReport b{{{lang::ExecStatus::kCompleted, "1\n"},
                             {lang::ExecStatus::kCompleted, "2\n"}}};
  CHECK_THROWS_AS(testgen::report_distance(a, b), LengthMismatch);
  CHECK_THROWS_AS(testgen::report_distance({}, {}), Error);
  testgen::BehaviorReport c{{{lang::ExecStatus::kRuntimeError, "1\n"}}};
  CHECK(testgen::report_distance(a, c) == 1.0);
  CHECK(testgen::report_distance(a, a) == 0.0);
}

TEST_CASE("testgen_distance: examples") {
  const auto p = median("program.mini");
  CHECK(testgen::testgen_distance(p, p, 200, 17) == 0.0);
  const auto one = lang::parse("func main() { int x; read x; print 1; }");
  const auto two = lang::parse("func main() { int x; read x; print 2; }");
  CHECK(testgen::testgen_distance(one, two, 50, 3) == 1.0);
}

TEST_CASE("testgen_distance: replay oracle on distinct programs") {
  const auto p = median("program.mini");
  const auto q = median("reference.mini");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto pair = testgen::testgen_pair(p, q, 200, seed);
    REQUIRE(!pair.merged.empty());
    // Independent recomputation straight from the interpreter.
    std::size_t differ = 0;
    for (const auto& in : pair.merged) {
      const auto a = lang::execute(p, in, lang::kDefaultFuel, false);
      const auto b = lang::execute(q, in, lang::kDefaultFuel, false);
      differ += a.status != b.status || a.stdout_text != b.stdout_text;
    }
    CHECK(pair.differing == differ);
    CHECK(pair.distance == static_cast<double>(differ) / static_cast<double>(pair.merged.size()));
    CHECK(pair.distance > 0.0);
    CHECK(pair.distance <= 1.0);
    CHECK(testgen::testgen_distance(q, p, 200, seed) == pair.distance);
    CHECK(testgen::testgen_distance(p, q, 200, seed) == pair.distance);
  }
}

TEST_CASE("diversity_from: row sums") {
  auto matrix = [](std::vector<double> d01_d02_d12) {
    testgen::DistanceMatrix m;
    m.size = 3;
    m.cells.resize(9);
    auto set = [&](std::size_t i, std::size_t j, double v) {
      m.cells[i * 3 + j].distance = v;
      m.cells[j * 3 + i].distance = v;
    };
    set(0, 1, d01_d02_d12[0]);
    set(0, 2, d01_d02_d12[1]);
    set(1, 2, d01_d02_d12[2]);
    return m;
  };
  CHECK(testgen::diversity_from(matrix({0.5, 0.5, 0.0})) == std::vector<double>{1.0, 0.5, 0.5});
  CHECK(testgen::diversity_from(matrix({2, 4, 0})) == std::vector<double>{6, 2, 4});
}

TEST_CASE("pairwise_distances: parallel, serial and brute force agree") {
  std::vector<lang::Program> patches = {
      median("program.mini"), median("reference.mini"), median("reference.mini"),
      lang::parse("func main() { int a, b, c, t; read a; read b; read c; print a; }")};
  const auto seeds = testgen::index_pair_seeds(123);
  const auto serial = testgen::pairwise_distances_serial(patches, 100, seeds, 5000);
  const auto parallel = testgen::pairwise_distances(patches, 100, seeds, 5000, Jobs{3});
  REQUIRE(serial.size == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(serial.at(i, j).distance == parallel.at(i, j).distance);
      CHECK(serial.at(i, j).merged == parallel.at(i, j).merged);
      CHECK(serial.at(i, j).distance == serial.at(j, i).distance);
      if (i == j) {
        CHECK(serial.at(i, j).distance == 0.0);
      } else {
        CHECK(serial.at(i, j).distance ==
              testgen::testgen_distance(patches[i], patches[j], 100, seeds(i, j), 5000));
      }
    }
  }
  CHECK(serial.at(1, 2).distance == 0.0);
  const auto div = testgen::diversity_from(serial);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(div[i] == doctest::Approx(testgen::testgen_diversity(i, patches, 100, 123, 5000)));
  }
}

TEST_CASE("testgen_diversity: identical patches give zero") {
  const std::vector<lang::Program> same(4, median("reference.mini"));
  for (std::size_t i = 0; i < same.size(); ++i) {
    CHECK(testgen::testgen_diversity(i, same, 200, 5) == 0.0);
  }
  const std::vector<lang::Program> single = {median("reference.mini")};
  CHECK(testgen::testgen_diversity(0, single, 200, 5) == 0.0);
}

TEST_CASE("suite files round trip") {
  testing::TempDir tmp("suitefile");
  const std::vector<std::string> inputs = {"1 2 3", "", "-4 5.25 6"};
  testgen::write_suite(tmp.path() / "suite.txt", inputs);
  CHECK(testing::slurp(tmp.path() / "suite.txt").rfind("# merged suite: 3 inputs\n", 0) == 0);
  CHECK(testgen::read_suite(tmp.path() / "suite.txt") == inputs);
}

}  // namespace
