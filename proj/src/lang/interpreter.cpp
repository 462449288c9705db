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

#include "divrepair/lang/interpreter.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "divrepair/lang/printer.hpp"

namespace divrepair::lang {
namespace {

struct Value {
  enum class Kind : std::uint8_t { kInt, kFloat, kBool };
  Kind kind = Kind::kInt;
  std::int64_t i = 0;
  double f = 0.0;
  bool b = false;

  static Value of_int(std::int64_t v) { return {Kind::kInt, v, 0.0, false}; }
  static Value of_float(double v) { return {Kind::kFloat, 0, v, false}; }
  static Value of_bool(bool v) { return {Kind::kBool, 0, 0.0, v}; }

  bool numeric() const { return kind != Kind::kBool; }
  double as_double() const {
    return kind == Kind::kFloat ? f : static_cast<double>(i);
  }
};

struct RuntimeFault {
  std::string message;
};
struct FuelOut {};

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) +
                                   static_cast<std::uint64_t>(b));
}
std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) -
                                   static_cast<std::uint64_t>(b));
}
std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) *
                                   static_cast<std::uint64_t>(b));
}

enum class Flow { kNormal, kReturn };

class Machine {
 public:
  Machine(const Program& program, std::string_view input,
          const ExecOptions& options)
      : program_(program), input_(input), options_(options) {
    const std::size_t flag_count =
        static_cast<std::size_t>(max_statement_id(program)) + 1;
    branch_flags_.assign(flag_count * 2, 0);
    if (options.record_statements) stmt_flags_.assign(flag_count, 0);
    if (options.trace) {
      trace_.emplace();
      trace_->layouts = program_points(program);
      loop_point_.assign(flag_count, -1);
      entry_point_.assign(program.functions.size(), 0);
      exit_point_.assign(program.functions.size(), 0);
      std::size_t fn = 0;
      for (std::size_t i = 0; i < trace_->layouts.size(); ++i) {
        const ProgramPoint& p = trace_->layouts[i].point;
        switch (p.kind) {
          case PointKind::kEntry:
            entry_point_[fn] = i;
            break;
          case PointKind::kLoopHead:
            loop_point_[static_cast<std::size_t>(p.stmt)] = static_cast<int>(i);
            break;
          case PointKind::kExit:
            exit_point_[fn++] = i;
            break;
        }
      }
    }
  }

  ExecOutcome run() {
    ExecOutcome out;
    try {
      call(static_cast<std::size_t>(program_.main_index), {});
      out.status = ExecStatus::kCompleted;
    } catch (const RuntimeFault& fault) {
      out.status = ExecStatus::kRuntimeError;
      out.error = fault.message;
    } catch (const FuelOut&) {
      out.status = ExecStatus::kFuelExhausted;
      out.error = "fuel exhausted";
    }
    out.stdout_text = std::move(stdout_);
    out.steps_used = steps_;
    out.trace = std::move(trace_);
    for (std::size_t k = 0; k < branch_flags_.size(); ++k) {
      if (branch_flags_[k]) {
        out.coverage.push_back({static_cast<StatementId>(k / 2), (k % 2) != 0});
      }
    }
    for (std::size_t k = 0; k < stmt_flags_.size(); ++k) {
      if (stmt_flags_[k]) out.statements.push_back(static_cast<StatementId>(k));
    }
    return out;
  }

 private:
  struct Frame {
    const Function* fn = nullptr;
    std::size_t index = 0;
    std::vector<Value> slots;
    std::optional<Value> result;
  };

  void step() {
    if (steps_ >= options_.fuel) throw FuelOut{};
    ++steps_;
  }

  [[noreturn]] static void fault(std::string message) {
    throw RuntimeFault{std::move(message)};
  }

  // `what` names the destination in the diagnostic; only read on failure.
  static Value coerce(const Value& v, Type type, std::string_view what,
                      std::string_view name = {}) {
    if (v.kind == Value::Kind::kBool) {
      fault("boolean value assigned to " + std::string(what) + " " +
            std::string(name));
    }
    if (type == Type::kInt) {
      if (v.kind == Value::Kind::kFloat) {
        fault("float value assigned to int " + std::string(what) + " " +
              std::string(name));
      }
      return v;
    }
    return Value::of_float(v.as_double());
  }

  static Value zero(Type type) {
    return type == Type::kInt ? Value::of_int(0) : Value::of_float(0.0);
  }

  void sample(std::size_t point, const Frame& frame) {
    TraceSample s;
    s.point = point;
    const auto& vars = trace_->layouts[point].variables;
    s.values.reserve(vars.size());
    const std::size_t own = std::min(vars.size(), frame.slots.size());
    for (std::size_t k = 0; k < own; ++k) {
      s.values.push_back(frame.slots[k].as_double());
    }
    if (vars.size() > frame.slots.size()) {
      s.values.push_back(frame.result ? frame.result->as_double() : 0.0);
    }
    trace_->samples.push_back(std::move(s));
  }

  std::optional<Value> call(std::size_t index, std::vector<Value> args) {
    if (depth_ >= kMaxCallDepth) fault("call depth limit exceeded");
    const Function& fn = program_.functions[index];
    Frame frame;
    frame.fn = &fn;
    frame.index = index;
    frame.slots.reserve(fn.params.size() + fn.locals.size());
    for (std::size_t k = 0; k < fn.params.size(); ++k) {
      frame.slots.push_back(coerce(args[k], fn.params[k].type, "parameter",
                                   fn.params[k].name));
    }
    for (const VarDecl& d : fn.locals) frame.slots.push_back(zero(d.type));

    ++depth_;
    if (trace_) {
      // Entry observes parameters only; the frame prefix holds exactly those.
      TraceSample s;
      s.point = entry_point_[index];
      for (std::size_t k = 0; k < fn.params.size(); ++k) {
        s.values.push_back(frame.slots[k].as_double());
      }
      trace_->samples.push_back(std::move(s));
    }
    block(fn.body, frame);
    if (fn.return_type && !frame.result) {
      fault("'" + fn.name + "' ended without returning a value");
    }
    if (trace_) sample(exit_point_[index], frame);
    --depth_;
    return frame.result;
  }

  Flow block(const Block& b, Frame& frame) {
    for (const Stmt& s : b) {
      if (statement(s, frame) == Flow::kReturn) return Flow::kReturn;
    }
    return Flow::kNormal;
  }

  void cover(StatementId id, bool taken) {
    branch_flags_[static_cast<std::size_t>(id) * 2 + (taken ? 1 : 0)] = 1;
  }

  Flow statement(const Stmt& s, Frame& frame) {
    step();
    if (!stmt_flags_.empty()) stmt_flags_[static_cast<std::size_t>(s.id)] = 1;
    switch (s.kind) {
      case StmtKind::kAssign: {
        const VarDecl& decl = declaration(frame, s.slot);
        frame.slots[static_cast<std::size_t>(s.slot)] =
            coerce(eval(*s.expr, frame), decl.type, "variable", decl.name);
        return Flow::kNormal;
      }
      case StmtKind::kRead:
        read_into(frame, s.slot);
        return Flow::kNormal;
      case StmtKind::kPrint:
        print(eval(*s.expr, frame));
        return Flow::kNormal;
      case StmtKind::kReturn:
        if (s.expr) {
          frame.result = coerce(eval(*s.expr, frame), *frame.fn->return_type,
                                "return value of", frame.fn->name);
        }
        return Flow::kReturn;
      case StmtKind::kCall:
        call_expr(*s.expr, frame);
        return Flow::kNormal;
      case StmtKind::kIf: {
        const bool taken = truthy(eval(*s.expr, frame));
        cover(s.id, taken);
        return block(taken ? s.then_body : s.else_body, frame);
      }
      case StmtKind::kWhile:
        for (;;) {
          step();
          if (trace_) {
            const int point = loop_point_[static_cast<std::size_t>(s.id)];
            if (point >= 0) sample(static_cast<std::size_t>(point), frame);
          }
          const bool taken = truthy(eval(*s.expr, frame));
          cover(s.id, taken);
          if (!taken) return Flow::kNormal;
          if (block(s.then_body, frame) == Flow::kReturn) return Flow::kReturn;
        }
    }
    return Flow::kNormal;
  }

  static const VarDecl& declaration(const Frame& frame, int slot) {
    const auto k = static_cast<std::size_t>(slot);
    const Function& fn = *frame.fn;
    return k < fn.params.size() ? fn.params[k] : fn.locals[k - fn.params.size()];
  }

  std::string_view next_token() {
    while (cursor_ < input_.size() &&
           std::isspace(static_cast<unsigned char>(input_[cursor_]))) {
      ++cursor_;
    }
    if (cursor_ >= input_.size()) fault("read past end of input");
    const std::size_t start = cursor_;
    while (cursor_ < input_.size() &&
           !std::isspace(static_cast<unsigned char>(input_[cursor_]))) {
      ++cursor_;
    }
    return input_.substr(start, cursor_ - start);
  }

  void read_into(Frame& frame, int slot) {
    const VarDecl& decl = declaration(frame, slot);
    const std::string_view token = next_token();
    const char* first = token.data();
    const char* last = token.data() + token.size();
    Value v;
    if (decl.type == Type::kInt) {
      std::int64_t parsed = 0;
      auto [ptr, ec] = std::from_chars(first, last, parsed);
      if (ec != std::errc() || ptr != last) {
        fault("cannot read '" + std::string(token) + "' as int");
      }
      v = Value::of_int(parsed);
    } else {
      double parsed = 0;
      auto [ptr, ec] = std::from_chars(first, last, parsed);
      if (ec != std::errc() || ptr != last) {
        fault("cannot read '" + std::string(token) + "' as float");
      }
      v = Value::of_float(parsed);
    }
    frame.slots[static_cast<std::size_t>(slot)] = v;
  }

  void print(const Value& v) {
    switch (v.kind) {
      case Value::Kind::kInt:
        stdout_ += std::to_string(v.i);
        break;
      case Value::Kind::kFloat:
        stdout_ += format_float(v.f);
        break;
      case Value::Kind::kBool:
        fault("cannot print a boolean");
    }
    stdout_ += '\n';
  }

  static bool truthy(const Value& v) {
    switch (v.kind) {
      case Value::Kind::kBool: return v.b;
      case Value::Kind::kInt: return v.i != 0;
      case Value::Kind::kFloat: return v.f != 0.0;
    }
    return false;
  }

  Value call_expr(const Expr& e, Frame& frame) {
    std::vector<Value> args;
    args.reserve(e.operands.size());
    for (const Expr& a : e.operands) args.push_back(eval(a, frame));
    auto result = call(static_cast<std::size_t>(e.callee), std::move(args));
    return result ? *result : Value::of_int(0);
  }

  Value eval(const Expr& e, Frame& frame) {
    switch (e.kind) {
      case ExprKind::kLiteral:
        if (const auto* i = std::get_if<std::int64_t>(&e.literal)) {
          return Value::of_int(*i);
        }
        return Value::of_float(std::get<double>(e.literal));
      case ExprKind::kVariable:
        return frame.slots[static_cast<std::size_t>(e.slot)];
      case ExprKind::kCall:
        return call_expr(e, frame);
      case ExprKind::kUnary: {
        const Value v = eval(e.operands[0], frame);
        if (e.op == Op::kNot) return Value::of_bool(!truthy(v));
        if (v.kind == Value::Kind::kBool) fault("cannot negate a boolean");
        return v.kind == Value::Kind::kInt ? Value::of_int(wrap_sub(0, v.i))
                                           : Value::of_float(-v.f);
      }
      case ExprKind::kBinary:
        return binary(e, frame);
    }
    return Value::of_int(0);
  }

  Value binary(const Expr& e, Frame& frame) {
    if (e.op == Op::kAnd) {
      if (!truthy(eval(e.operands[0], frame))) return Value::of_bool(false);
      return Value::of_bool(truthy(eval(e.operands[1], frame)));
    }
    if (e.op == Op::kOr) {
      if (truthy(eval(e.operands[0], frame))) return Value::of_bool(true);
      return Value::of_bool(truthy(eval(e.operands[1], frame)));
    }
    const Value a = eval(e.operands[0], frame);
    const Value b = eval(e.operands[1], frame);
    if (e.op == Op::kEq || e.op == Op::kNe) {
      bool equal;
      if (a.kind == Value::Kind::kBool || b.kind == Value::Kind::kBool) {
        if (a.kind != b.kind) fault("cannot compare a boolean with a number");
        equal = a.b == b.b;
      } else if (a.kind == Value::Kind::kInt && b.kind == Value::Kind::kInt) {
        equal = a.i == b.i;
      } else {
        equal = a.as_double() == b.as_double();
      }
      return Value::of_bool(e.op == Op::kEq ? equal : !equal);
    }
    if (!a.numeric() || !b.numeric()) fault("arithmetic on a boolean");
    const bool ints = a.kind == Value::Kind::kInt && b.kind == Value::Kind::kInt;
    switch (e.op) {
      case Op::kLt:
        return Value::of_bool(ints ? a.i < b.i : a.as_double() < b.as_double());
      case Op::kLe:
        return Value::of_bool(ints ? a.i <= b.i : a.as_double() <= b.as_double());
      case Op::kGt:
        return Value::of_bool(ints ? a.i > b.i : a.as_double() > b.as_double());
      case Op::kGe:
        return Value::of_bool(ints ? a.i >= b.i : a.as_double() >= b.as_double());
      case Op::kAdd:
        return ints ? Value::of_int(wrap_add(a.i, b.i))
                    : Value::of_float(a.as_double() + b.as_double());
      case Op::kSub:
        return ints ? Value::of_int(wrap_sub(a.i, b.i))
                    : Value::of_float(a.as_double() - b.as_double());
      case Op::kMul:
        return ints ? Value::of_int(wrap_mul(a.i, b.i))
                    : Value::of_float(a.as_double() * b.as_double());
      case Op::kDiv:
      case Op::kMod: {
        if (ints) {
          if (b.i == 0) fault("division by zero");
          if (a.i == std::numeric_limits<std::int64_t>::min() && b.i == -1) {
            return Value::of_int(e.op == Op::kDiv ? a.i : 0);
          }
          return Value::of_int(e.op == Op::kDiv ? a.i / b.i : a.i % b.i);
        }
        if (b.as_double() == 0.0) fault("division by zero");
        return Value::of_float(e.op == Op::kDiv
                                   ? a.as_double() / b.as_double()
                                   : std::fmod(a.as_double(), b.as_double()));
      }
      default:
        break;
    }
    fault("unsupported operator");
  }

  const Program& program_;
  std::string_view input_;
  const ExecOptions& options_;
  std::size_t cursor_ = 0;
  std::uint64_t steps_ = 0;
  int depth_ = 0;
  std::string stdout_;
  std::vector<std::uint8_t> branch_flags_;
  std::vector<std::uint8_t> stmt_flags_;
  std::optional<Trace> trace_;
  std::vector<int> loop_point_;
  std::vector<std::size_t> entry_point_;
  std::vector<std::size_t> exit_point_;
};

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

void collect_loops(const Block& block, std::vector<StatementId>& out) {
  for (const Stmt& s : block) {
    if (s.kind == StmtKind::kWhile) out.push_back(s.id);
    collect_loops(s.then_body, out);
    collect_loops(s.else_body, out);
  }
}

}  // namespace

std::string_view to_string(ExecStatus status) {
  switch (status) {
    case ExecStatus::kCompleted: return "completed";
    case ExecStatus::kRuntimeError: return "runtime_error";
    case ExecStatus::kFuelExhausted: return "fuel_exhausted";
  }
  return "?";
}

std::string to_string(const ProgramPoint& point) {
  switch (point.kind) {
    case PointKind::kEntry: return "entry(" + point.function + ")";
    case PointKind::kExit: return "exit(" + point.function + ")";
    case PointKind::kLoopHead: return "loop_head(" + std::to_string(point.stmt) + ")";
  }
  return "?";
}

std::vector<PointLayout> program_points(const Program& program) {
  std::vector<PointLayout> points;
  for (const Function& f : program.functions) {
    std::vector<std::string> params;
    for (const VarDecl& d : f.params) params.push_back(d.name);
    std::vector<std::string> all = params;
    for (const VarDecl& d : f.locals) all.push_back(d.name);

    points.push_back({{PointKind::kEntry, f.name, 0}, params});
    std::vector<StatementId> loops;
    collect_loops(f.body, loops);
    std::sort(loops.begin(), loops.end());
    for (StatementId id : loops) {
      points.push_back({{PointKind::kLoopHead, f.name, id}, all});
    }
    std::vector<std::string> at_exit = all;
    if (f.return_type) at_exit.push_back("return");
    points.push_back({{PointKind::kExit, f.name, 0}, std::move(at_exit)});
  }
  return points;
}

std::optional<double> Trace::value(const TraceSample& s,
                                   std::string_view name) const {
  const auto& vars = layouts[s.point].variables;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (vars[k] == name) return s.values[k];
  }
  return std::nullopt;
}

bool operator==(const TraceSample& a, const TraceSample& b) {
  return a.point == b.point &&
         std::equal(a.values.begin(), a.values.end(), b.values.begin(),
                    b.values.end(), same_bits);
}

bool operator==(const PointLayout& a, const PointLayout& b) {
  return a.point == b.point && a.variables == b.variables;
}

bool operator==(const Trace& a, const Trace& b) {
  return a.layouts == b.layouts && a.samples == b.samples;
}

bool ExecOutcome::operator==(const ExecOutcome& other) const {
  return stdout_text == other.stdout_text && status == other.status &&
         steps_used == other.steps_used && trace == other.trace &&
         coverage == other.coverage && statements == other.statements &&
         error == other.error;
}

ExecOutcome execute(const Program& program, std::string_view input,
                    const ExecOptions& options) {
  return Machine(program, input, options).run();
}

ExecOutcome execute(const Program& program, std::string_view input,
                    std::uint64_t fuel, bool trace_points) {
  ExecOptions options;
  options.fuel = fuel;
  options.trace = trace_points;
  return execute(program, input, options);
}

}  // namespace divrepair::lang
