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

#include "divrepair/cli/corpus.hpp"

#include <algorithm>

#include "divrepair/common/errors.hpp"
#include "divrepair/lang/parser.hpp"

namespace divrepair::cli {

namespace fs = std::filesystem;

BugBundle load_bundle(const fs::path& dir, std::uint64_t fuel) {
  if (!fs::is_directory(dir)) throw Error("no bug directory at " + dir.string());
  BugBundle b;
  b.dir = dir;
  b.id = fs::path(dir).lexically_normal().filename().string();
  if (b.id.empty()) b.id = fs::path(dir).lexically_normal().parent_path().filename().string();
  const fs::path program = dir / "program.mini";
  if (!fs::exists(program)) throw Error("missing " + program.string());
  b.program = lang::parse_file(program);
  if (fs::exists(dir / "reference.mini")) {
    b.reference = lang::parse_file(dir / "reference.mini");
  }
  const fs::path wb = dir / "tests" / "whitebox";
  const fs::path bb = dir / "tests" / "blackbox";
  if (!fs::is_directory(wb)) throw Error("missing " + wb.string());
  if (!fs::is_directory(bb)) throw Error("missing " + bb.string());
  b.whitebox = harness::load_suite(wb, harness::Origin::kWhitebox);
  b.blackbox = harness::load_suite(bb, harness::Origin::kBlackbox);
  validate_bundle(b, fuel);
  return b;
}

void validate_bundle(const BugBundle& b, std::uint64_t fuel) {
  if (b.whitebox.empty()) throw Error(b.id + ": empty white-box suite");
  if (b.blackbox.empty()) throw Error(b.id + ": empty black-box suite");
  // Throws NoFailingTests when the bug is not exposed.
  harness::classify_tests(b.program, b.whitebox, fuel);
  if (b.reference) {
    for (const auto* suite : {&b.whitebox, &b.blackbox}) {
      for (const harness::TestCase& t : *suite) {
        if (harness::run_test(*b.reference, t, fuel) != harness::TestResult::kPass) {
          throw Error(b.id + ": reference fails test " + t.id);
        }
      }
    }
  }
}

std::vector<fs::path> list_bundles(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error("no corpus directory at " + root.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && fs::exists(entry.path() / "program.mini")) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

fs::path resolve_bug(const std::string& arg, const fs::path& corpus_root) {
  if (fs::exists(fs::path(arg) / "program.mini")) return arg;
  return corpus_root / arg;
}

search::BugInput to_input(const BugBundle& bundle) {
  return {bundle.id, bundle.program, bundle.whitebox};
}

fs::path run_path(const fs::path& root, const std::string& bug,
                  search::Technique technique, std::uint64_t seed) {
  return root / "runs" / bug / std::string(search::to_string(technique)) /
         ("seed" + std::to_string(seed) + ".json");
}

}  // namespace divrepair::cli
