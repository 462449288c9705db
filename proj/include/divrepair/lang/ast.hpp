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

#ifndef DIVREPAIR_LANG_AST_HPP_
#define DIVREPAIR_LANG_AST_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace divrepair::lang {

/// Stable identifier of a statement. Parsing numbers statements from 1 in
/// source (pre-order) order; patched programs keep the original numbers and
/// give inserted copies fresh numbers above the original maximum.
using StatementId = std::int32_t;

enum class Type { kInt, kFloat };

/// Literal value of the language's scalar types.
using Scalar = std::variant<std::int64_t, double>;

enum class ExprKind { kLiteral, kVariable, kUnary, kBinary, kCall };

enum class Op {
  kNone,
  kNeg,
  kNot,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kMod,
  kLt,
  kLe,
  kGt,
  kGe,
  kEq,
  kNe,
  kAnd,
  kOr,
};

struct Expr {
  ExprKind kind = ExprKind::kLiteral;
  Op op = Op::kNone;
  Scalar literal = std::int64_t{0};
  /// Variable name (kVariable) or callee name (kCall).
  std::string name;
  /// Unary: one operand. Binary: lhs, rhs. Call: arguments.
  std::vector<Expr> operands;

  // Filled by resolve(); -1 until then.
  int slot = -1;
  int callee = -1;

  bool operator==(const Expr& other) const;

  static Expr int_literal(std::int64_t v);
  static Expr float_literal(double v);
  static Expr variable(std::string name);
  static Expr unary(Op op, Expr operand);
  static Expr binary(Op op, Expr lhs, Expr rhs);
  static Expr call(std::string callee, std::vector<Expr> args);
};

enum class StmtKind { kAssign, kIf, kWhile, kRead, kPrint, kReturn, kCall };

struct Stmt {
  StmtKind kind = StmtKind::kPrint;
  StatementId id = 0;
  /// Assigned or read variable.
  std::string target;
  int slot = -1;
  /// Assign/print value, if/while condition, call expression, return value.
  std::optional<Expr> expr;
  std::vector<Stmt> then_body;
  /// Only meaningful for kIf; empty when there is no else branch.
  std::vector<Stmt> else_body;
  bool has_else = false;

  bool operator==(const Stmt& other) const;
};

using Block = std::vector<Stmt>;

struct VarDecl {
  Type type = Type::kInt;
  std::string name;
  bool operator==(const VarDecl&) const = default;
};

struct Function {
  std::string name;
  std::vector<VarDecl> params;
  std::optional<Type> return_type;
  std::vector<VarDecl> locals;
  Block body;

  bool operator==(const Function&) const = default;

  /// Parameters followed by locals; the order of interpreter frame slots.
  std::vector<VarDecl> variables() const;
};

struct Program {
  std::vector<Function> functions;

  bool operator==(const Program&) const = default;

  /// Index of `main`; valid after resolve().
  int main_index = -1;

  const Function* find_function(const std::string& name) const;
};

/// Program-order traversal helpers. The visitor receives every statement,
/// including nested ones, in pre-order (the order StatementIds are assigned).
void for_each_stmt(const Block& block, const std::function<void(const Stmt&)>& visit);
void for_each_stmt(const Program& program,
                   const std::function<void(const Stmt&)>& visit);

std::size_t statement_count(const Program& program);
StatementId max_statement_id(const Program& program);

/// Renumbers every statement 1..n in pre-order.
void renumber(Program& program);

/// Structural equality that ignores statement ids and resolution slots.
bool same_shape(const Program& a, const Program& b);

}  // namespace divrepair::lang

#endif  // DIVREPAIR_LANG_AST_HPP_
