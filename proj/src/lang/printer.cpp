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

#include "divrepair/lang/printer.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace divrepair::lang {
namespace {

int precedence(Op op) {
  switch (op) {
    case Op::kOr: return 1;
    case Op::kAnd: return 2;
    case Op::kEq: case Op::kNe: return 3;
    case Op::kLt: case Op::kLe: case Op::kGt: case Op::kGe: return 4;
    case Op::kAdd: case Op::kSub: return 5;
    case Op::kMul: case Op::kDiv: case Op::kMod: return 6;
    default: return 7;
  }
}

const char* spelling(Op op) {
  switch (op) {
    case Op::kNeg: return "-";
    case Op::kNot: return "!";
    case Op::kAdd: return "+";
    case Op::kSub: return "-";
    case Op::kMul: return "*";
    case Op::kDiv: return "/";
    case Op::kMod: return "%";
    case Op::kLt: return "<";
    case Op::kLe: return "<=";
    case Op::kGt: return ">";
    case Op::kGe: return ">=";
    case Op::kEq: return "==";
    case Op::kNe: return "!=";
    case Op::kAnd: return "&&";
    case Op::kOr: return "||";
    case Op::kNone: break;
  }
  return "?";
}

const char* type_name(Type t) { return t == Type::kInt ? "int" : "float"; }

void print_expr(std::ostream& out, const Expr& e);

void print_operand(std::ostream& out, const Expr& e, bool parens) {
  if (parens) out << '(';
  print_expr(out, e);
  if (parens) out << ')';
}

void print_expr(std::ostream& out, const Expr& e) {
  switch (e.kind) {
    case ExprKind::kLiteral:
      out << format_scalar(e.literal);
      return;
    case ExprKind::kVariable:
      out << e.name;
      return;
    case ExprKind::kUnary:
      out << spelling(e.op);
      // "--x" still lexes as two minus tokens, so only binaries need parens.
      print_operand(out, e.operands[0], e.operands[0].kind == ExprKind::kBinary);
      return;
    case ExprKind::kBinary: {
      const int prec = precedence(e.op);
      const Expr& lhs = e.operands[0];
      const Expr& rhs = e.operands[1];
      // Left-associative: an equal-precedence right operand needs parens.
      print_operand(out, lhs,
                    lhs.kind == ExprKind::kBinary && precedence(lhs.op) < prec);
      out << ' ' << spelling(e.op) << ' ';
      print_operand(out, rhs,
                    rhs.kind == ExprKind::kBinary && precedence(rhs.op) <= prec);
      return;
    }
    case ExprKind::kCall:
      out << e.name << '(';
      for (std::size_t i = 0; i < e.operands.size(); ++i) {
        if (i) out << ", ";
        print_expr(out, e.operands[i]);
      }
      out << ')';
      return;
  }
}

void indent(std::ostream& out, int depth) {
  for (int i = 0; i < depth; ++i) out << "  ";
}

void print_block(std::ostream& out, const Block& block, int depth);

void print_stmt(std::ostream& out, const Stmt& s, int depth) {
  indent(out, depth);
  switch (s.kind) {
    case StmtKind::kAssign:
      out << s.target << " = ";
      print_expr(out, *s.expr);
      out << ";\n";
      return;
    case StmtKind::kRead:
      out << "read " << s.target << ";\n";
      return;
    case StmtKind::kPrint:
      out << "print ";
      print_expr(out, *s.expr);
      out << ";\n";
      return;
    case StmtKind::kReturn:
      out << "return";
      if (s.expr) {
        out << ' ';
        print_expr(out, *s.expr);
      }
      out << ";\n";
      return;
    case StmtKind::kCall:
      print_expr(out, *s.expr);
      out << ";\n";
      return;
    case StmtKind::kWhile:
      out << "while ";
      print_expr(out, *s.expr);
      out << " {\n";
      print_block(out, s.then_body, depth + 1);
      indent(out, depth);
      out << "}\n";
      return;
    case StmtKind::kIf:
      out << "if ";
      print_expr(out, *s.expr);
      out << " {\n";
      print_block(out, s.then_body, depth + 1);
      indent(out, depth);
      out << '}';
      if (s.has_else) {
        out << " else {\n";
        print_block(out, s.else_body, depth + 1);
        indent(out, depth);
        out << '}';
      }
      out << '\n';
      return;
  }
}

void print_block(std::ostream& out, const Block& block, int depth) {
  for (const Stmt& s : block) print_stmt(out, s, depth);
}

}  // namespace

std::string format_float(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  std::string text(buf, end);
  if (text.find_first_of(".e") == std::string::npos) text += ".0";
  return text;
}

std::string format_scalar(const Scalar& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) {
    return std::to_string(*i);
  }
  return format_float(std::get<double>(value));
}

std::string pretty_print(const Expr& expr) {
  std::ostringstream out;
  print_expr(out, expr);
  return out.str();
}

std::string pretty_print(const Stmt& stmt) {
  std::ostringstream out;
  print_stmt(out, stmt, 0);
  return out.str();
}

std::string pretty_print(const Program& program) {
  std::ostringstream out;
  for (std::size_t i = 0; i < program.functions.size(); ++i) {
    const Function& f = program.functions[i];
    if (i) out << '\n';
    out << "func " << f.name << '(';
    for (std::size_t k = 0; k < f.params.size(); ++k) {
      if (k) out << ", ";
      out << type_name(f.params[k].type) << ' ' << f.params[k].name;
    }
    out << ')';
    if (f.return_type) out << ": " << type_name(*f.return_type);
    out << " {\n";
    for (const VarDecl& d : f.locals) {
      out << "  " << type_name(d.type) << ' ' << d.name << ";\n";
    }
    print_block(out, f.body, 1);
    out << "}\n";
  }
  return out.str();
}

}  // namespace divrepair::lang
