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

#ifndef DIVREPAIR_HARNESS_TEST_CASE_HPP_
#define DIVREPAIR_HARNESS_TEST_CASE_HPP_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "divrepair/lang/ast.hpp"
#include "divrepair/lang/interpreter.hpp"

namespace divrepair::harness {

enum class Role { kPositive, kNegative };
enum class Origin { kWhitebox, kBlackbox };

struct TestCase {
  std::string id;
  std::string input;
  std::string expected_output;
  /// Assigned by classify_tests() from the original program's behaviour.
  Role role = Role::kPositive;
  Origin origin = Origin::kWhitebox;

  bool operator==(const TestCase&) const = default;
};

using TestSuite = std::vector<TestCase>;

/// Loads `<id>.in` / `<id>.out` pairs from a directory, ordered by id.
/// Throws divrepair::Error on an unpaired file or an empty directory.
TestSuite load_suite(const std::filesystem::path& dir, Origin origin);

enum class TestResult { kPass, kFail };

/// Pass iff the run completes and stdout matches byte for byte.
TestResult run_test(const lang::Program& program, const TestCase& test,
                    std::uint64_t fuel = lang::kDefaultFuel);

struct Classification {
  TestSuite positives;
  TestSuite negatives;
};

/// Splits a suite by the original program's results; negatives are the
/// failures. Throws NoFailingTests when every test passes.
Classification classify_tests(const lang::Program& original,
                              const TestSuite& suite,
                              std::uint64_t fuel = lang::kDefaultFuel);

}  // namespace divrepair::harness

#endif  // DIVREPAIR_HARNESS_TEST_CASE_HPP_
