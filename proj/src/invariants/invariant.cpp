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

#include "divrepair/invariants/invariant.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <sstream>

#include "divrepair/common/errors.hpp"

namespace divrepair::inv {
namespace {

const char* symbol(Template t) {
  switch (t) {
    case Template::kEqConst: case Template::kEqVar: return "==";
    case Template::kGeConst: return ">=";
    case Template::kLeConst: return "<=";
    case Template::kNonZero: return "!=";
    case Template::kLtVar: return "<";
    case Template::kLeVar: return "<=";
  }
  return "?";
}

struct Column {
  bool all_same = true;
  bool any_nan = false;
  bool any_zero = false;
  double first = 0.0;
  double min = 0.0;
  double max = 0.0;
};

Column summarize(const std::vector<const lang::TraceSample*>& samples,
                 std::size_t var) {
  Column c;
  c.first = samples.front()->values[var];
  c.min = c.max = c.first;
  for (const lang::TraceSample* s : samples) {
    const double v = s->values[var];
    if (std::isnan(v)) c.any_nan = true;
    if (v == 0.0) c.any_zero = true;
    if (std::bit_cast<std::uint64_t>(v) != std::bit_cast<std::uint64_t>(c.first)) {
      c.all_same = false;
    }
    c.min = std::min(c.min, v);
    c.max = std::max(c.max, v);
  }
  return c;
}

bool pair_holds(const Invariant& inv,
                const std::vector<const lang::TraceSample*>& samples,
                std::size_t a, std::size_t b) {
  return std::all_of(samples.begin(), samples.end(), [&](const lang::TraceSample* s) {
    return inv.holds(s->values[a], s->values[b]);
  });
}

}  // namespace

bool Invariant::holds(double lhs, double rhs) const {
  switch (kind) {
    case Template::kEqConst: return lhs == constant;
    case Template::kGeConst: return lhs >= constant;
    case Template::kLeConst: return lhs <= constant;
    case Template::kNonZero: return lhs != 0.0;
    case Template::kEqVar: return lhs == rhs;
    case Template::kLtVar: return lhs < rhs;
    case Template::kLeVar: return lhs <= rhs;
  }
  return false;
}

std::string format_number(double value) {
  if (std::isfinite(value) && value == std::trunc(value) &&
      std::fabs(value) < 9007199254740992.0) {
    return std::to_string(static_cast<long long>(value));
  }
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string Invariant::to_string() const {
  std::string text = operands.at(0);
  text += ' ';
  text += symbol(kind);
  text += ' ';
  if (binary()) {
    text += operands.at(1);
  } else if (kind == Template::kNonZero) {
    text += '0';
  } else {
    text += format_number(constant);
  }
  return text + " @ " + lang::to_string(point);
}

std::vector<Invariant> infer_from_traces(std::span<const lang::Trace> traces,
                                         std::size_t min_support) {
  if (min_support < 1) throw Error("min_support must be at least 1");
  std::size_t total = 0;
  for (const lang::Trace& t : traces) total += t.samples.size();
  if (total == 0) throw EmptyTraces();

  const std::vector<lang::PointLayout>& layouts = traces.front().layouts;
  std::vector<std::vector<const lang::TraceSample*>> by_point(layouts.size());
  for (const lang::Trace& t : traces) {
    if (!(t.layouts == layouts)) {
      throw Error("traces come from programs with different program points");
    }
    for (const lang::TraceSample& s : t.samples) by_point[s.point].push_back(&s);
  }

  std::vector<Invariant> out;
  for (std::size_t p = 0; p < layouts.size(); ++p) {
    const auto& samples = by_point[p];
    const auto& vars = layouts[p].variables;
    if (samples.size() < min_support || vars.empty()) continue;

    std::vector<Column> cols;
    for (std::size_t v = 0; v < vars.size(); ++v) cols.push_back(summarize(samples, v));

    auto unary = [&](Template kind, std::size_t v, double c) {
      out.push_back({layouts[p].point, kind, {vars[v]}, c});
    };
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (cols[v].all_same && !cols[v].any_nan) unary(Template::kEqConst, v, cols[v].first);
    }
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (!cols[v].any_nan) unary(Template::kGeConst, v, cols[v].min);
    }
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (!cols[v].any_nan) unary(Template::kLeConst, v, cols[v].max);
    }
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (!cols[v].any_zero) unary(Template::kNonZero, v, 0.0);
    }

    auto binary = [&](Template kind, bool ordered) {
      for (std::size_t a = 0; a < vars.size(); ++a) {
        for (std::size_t b = 0; b < vars.size(); ++b) {
          if (a == b || (!ordered && b < a)) continue;
          Invariant inv{layouts[p].point, kind, {vars[a], vars[b]}, 0.0};
          if (pair_holds(inv, samples, a, b)) out.push_back(std::move(inv));
        }
      }
    };
    binary(Template::kEqVar, /*ordered=*/false);
    binary(Template::kLtVar, /*ordered=*/true);
    binary(Template::kLeVar, /*ordered=*/true);
  }
  return out;
}

std::vector<Invariant> infer_invariants(const lang::Program& original,
                                        const harness::TestSuite& suite,
                                        std::size_t min_support,
                                        std::uint64_t fuel) {
  std::vector<lang::Trace> traces;
  traces.reserve(suite.size());
  for (const harness::TestCase& t : suite) {
    lang::ExecOutcome out = lang::execute(original, t.input, fuel, true);
    traces.push_back(std::move(*out.trace));
  }
  if (traces.empty()) throw EmptyTraces();
  return infer_from_traces(traces, min_support);
}

std::string serialize(std::span<const Invariant> invariants) {
  std::string text;
  for (const Invariant& inv : invariants) {
    text += inv.to_string();
    text += '\n';
  }
  return text;
}

}  // namespace divrepair::inv
