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

#ifndef DIVREPAIR_INVARIANTS_INVARIANT_HPP_
#define DIVREPAIR_INVARIANTS_INVARIANT_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "divrepair/harness/test_case.hpp"
#include "divrepair/lang/interpreter.hpp"

namespace divrepair::inv {

/// The closed invariant grammar, in canonical template order.
enum class Template {
  kEqConst,   // v == c
  kGeConst,   // v >= c
  kLeConst,   // v <= c
  kNonZero,   // v != 0
  kEqVar,     // v1 == v2
  kLtVar,     // v1 < v2
  kLeVar,     // v1 <= v2
};

inline constexpr std::size_t kDefaultMinSupport = 3;

struct Invariant {
  lang::ProgramPoint point;
  Template kind = Template::kEqConst;
  /// One name for unary templates, two for binary ones.
  std::vector<std::string> operands;
  /// Used by the three constant templates.
  double constant = 0.0;

  bool operator==(const Invariant&) const = default;

  bool binary() const {
    return kind == Template::kEqVar || kind == Template::kLtVar ||
           kind == Template::kLeVar;
  }

  /// Evaluates the predicate on operand values (rhs ignored when unary).
  bool holds(double lhs, double rhs = 0.0) const;

  /// Canonical one-line form, e.g. "x >= 1 @ loop_head(4)".
  std::string to_string() const;
};

/// Integral values print without a fractional part, others in shortest
/// round-trip form.
std::string format_number(double value);

/// Instantiates every template that holds on all samples of its point, for
/// points with at least `min_support` samples. Output is in canonical order:
/// point order, then template order, then operand order. Throws EmptyTraces
/// when the traces hold no samples at all.
std::vector<Invariant> infer_from_traces(std::span<const lang::Trace> traces,
                                         std::size_t min_support);

/// Traces the original program on every test of `suite` and infers from them.
std::vector<Invariant> infer_invariants(const lang::Program& original,
                                        const harness::TestSuite& suite,
                                        std::size_t min_support = kDefaultMinSupport,
                                        std::uint64_t fuel = lang::kDefaultFuel);

/// One invariant per line, canonical form.
std::string serialize(std::span<const Invariant> invariants);

}  // namespace divrepair::inv

#endif  // DIVREPAIR_INVARIANTS_INVARIANT_HPP_
