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

#ifndef DIVREPAIR_LANG_INTERPRETER_HPP_
#define DIVREPAIR_LANG_INTERPRETER_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "divrepair/lang/ast.hpp"

namespace divrepair::lang {

inline constexpr std::uint64_t kDefaultFuel = 100'000;

/// Calls nested deeper than this fail with a runtime error.
inline constexpr int kMaxCallDepth = 200;

enum class ExecStatus { kCompleted, kRuntimeError, kFuelExhausted };

std::string_view to_string(ExecStatus status);

/// One direction of one if/while condition.
struct BranchId {
  StatementId stmt = 0;
  bool taken = false;
  auto operator<=>(const BranchId&) const = default;
};

enum class PointKind { kEntry, kLoopHead, kExit };

struct ProgramPoint {
  PointKind kind = PointKind::kEntry;
  std::string function;
  /// Loop statement for kLoopHead, 0 otherwise.
  StatementId stmt = 0;

  bool operator==(const ProgramPoint&) const = default;
};

/// "entry(main)", "exit(f)", "loop_head(7)".
std::string to_string(const ProgramPoint& point);

/// A program point and the numeric variables observable there.
struct PointLayout {
  ProgramPoint point;
  std::vector<std::string> variables;
};

/// All points of a program in canonical order: for each function in source
/// order, its entry, then its loop heads in statement order, then its exit.
/// Entry observes the parameters; loop heads observe parameters and locals;
/// exit additionally observes `return` when the function yields a value.
std::vector<PointLayout> program_points(const Program& program);

struct TraceSample {
  /// Index into Trace::layouts.
  std::size_t point = 0;
  /// Aligned with the layout's variables.
  std::vector<double> values;
};

/// Loop-head convention: one sample immediately before every evaluation of
/// the loop condition, so a loop whose condition is evaluated n times yields
/// exactly n samples (the final, failing evaluation included).
struct Trace {
  std::vector<PointLayout> layouts;
  std::vector<TraceSample> samples;

  const ProgramPoint& point_of(const TraceSample& s) const {
    return layouts[s.point].point;
  }
  std::optional<double> value(const TraceSample& s, std::string_view name) const;
};

struct ExecOptions {
  std::uint64_t fuel = kDefaultFuel;
  bool trace = false;
  /// Populates ExecOutcome::statements.
  bool record_statements = false;
};

struct ExecOutcome {
  std::string stdout_text;
  ExecStatus status = ExecStatus::kCompleted;
  /// One step per executed statement plus one per loop-condition evaluation.
  std::uint64_t steps_used = 0;
  std::optional<Trace> trace;
  /// Sorted, unique.
  std::vector<BranchId> coverage;
  /// Sorted, unique; empty unless requested.
  std::vector<StatementId> statements;
  std::string error;

  bool operator==(const ExecOutcome& other) const;
};

/// Runs `main` of a resolved program on whitespace-separated input tokens.
/// Deterministic and reentrant: all mutable state lives in the call.
ExecOutcome execute(const Program& program, std::string_view input,
                    const ExecOptions& options = {});

ExecOutcome execute(const Program& program, std::string_view input,
                    std::uint64_t fuel, bool trace_points);

bool operator==(const TraceSample& a, const TraceSample& b);
bool operator==(const PointLayout& a, const PointLayout& b);
bool operator==(const Trace& a, const Trace& b);

}  // namespace divrepair::lang

#endif  // DIVREPAIR_LANG_INTERPRETER_HPP_
