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

#ifndef DIVREPAIR_TESTS_SUPPORT_FIXTURES_HPP_
#define DIVREPAIR_TESTS_SUPPORT_FIXTURES_HPP_

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "divrepair/harness/test_case.hpp"
#include "divrepair/lang/parser.hpp"

namespace divrepair::testing {

inline std::filesystem::path corpus_dir() { return DIVREPAIR_CORPUS_DIR; }

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::vector<std::string> bug_ids() {
  std::vector<std::string> ids;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir())) {
    if (e.is_directory()) ids.push_back(e.path().filename().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

inline harness::TestCase make_test(std::string id, std::string input,
                                   std::string expected) {
  harness::TestCase t;
  t.id = std::move(id);
  t.input = std::move(input);
  t.expected_output = std::move(expected);
  return t;
}

/// A scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("divrepair-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace divrepair::testing

#endif  // DIVREPAIR_TESTS_SUPPORT_FIXTURES_HPP_
