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

#include "divrepair/lang/ast.hpp"

#include <algorithm>

namespace divrepair::lang {

bool Expr::operator==(const Expr& other) const {
  return kind == other.kind && op == other.op && literal == other.literal &&
         name == other.name && operands == other.operands;
}

Expr Expr::int_literal(std::int64_t v) {
  Expr e;
  e.kind = ExprKind::kLiteral;
  e.literal = v;
  return e;
}

Expr Expr::float_literal(double v) {
  Expr e;
  e.kind = ExprKind::kLiteral;
  e.literal = v;
  return e;
}

Expr Expr::variable(std::string name) {
  Expr e;
  e.kind = ExprKind::kVariable;
  e.name = std::move(name);
  return e;
}

Expr Expr::unary(Op op, Expr operand) {
  Expr e;
  e.kind = ExprKind::kUnary;
  e.op = op;
  e.operands.push_back(std::move(operand));
  return e;
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = ExprKind::kBinary;
  e.op = op;
  e.operands.push_back(std::move(lhs));
  e.operands.push_back(std::move(rhs));
  return e;
}

Expr Expr::call(std::string callee, std::vector<Expr> args) {
  Expr e;
  e.kind = ExprKind::kCall;
  e.name = std::move(callee);
  e.operands = std::move(args);
  return e;
}

bool Stmt::operator==(const Stmt& other) const {
  return kind == other.kind && id == other.id && target == other.target &&
         expr == other.expr && then_body == other.then_body &&
         else_body == other.else_body && has_else == other.has_else;
}

std::vector<VarDecl> Function::variables() const {
  std::vector<VarDecl> all = params;
  all.insert(all.end(), locals.begin(), locals.end());
  return all;
}

const Function* Program::find_function(const std::string& name) const {
  auto it = std::find_if(functions.begin(), functions.end(),
                         [&](const Function& f) { return f.name == name; });
  return it == functions.end() ? nullptr : &*it;
}

void for_each_stmt(const Block& block,
                   const std::function<void(const Stmt&)>& visit) {
  for (const Stmt& s : block) {
    visit(s);
    for_each_stmt(s.then_body, visit);
    for_each_stmt(s.else_body, visit);
  }
}

void for_each_stmt(const Program& program,
                   const std::function<void(const Stmt&)>& visit) {
  for (const Function& f : program.functions) for_each_stmt(f.body, visit);
}

std::size_t statement_count(const Program& program) {
  std::size_t n = 0;
  for_each_stmt(program, [&](const Stmt&) { ++n; });
  return n;
}

StatementId max_statement_id(const Program& program) {
  StatementId max_id = 0;
  for_each_stmt(program,
                [&](const Stmt& s) { max_id = std::max(max_id, s.id); });
  return max_id;
}

namespace {

void renumber_block(Block& block, StatementId& next) {
  for (Stmt& s : block) {
    s.id = next++;
    renumber_block(s.then_body, next);
    renumber_block(s.else_body, next);
  }
}

bool same_shape(const Block& a, const Block& b);

bool same_shape(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.target == b.target && a.expr == b.expr &&
         a.has_else == b.has_else && same_shape(a.then_body, b.then_body) &&
         same_shape(a.else_body, b.else_body);
}

bool same_shape(const Block& a, const Block& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                    [](const Stmt& x, const Stmt& y) { return same_shape(x, y); });
}

}  // namespace

void renumber(Program& program) {
  StatementId next = 1;
  for (Function& f : program.functions) renumber_block(f.body, next);
}

bool same_shape(const Program& a, const Program& b) {
  return std::equal(a.functions.begin(), a.functions.end(),
                    b.functions.begin(), b.functions.end(),
                    [](const Function& x, const Function& y) {
                      return x.name == y.name && x.params == y.params &&
                             x.return_type == y.return_type &&
                             x.locals == y.locals && same_shape(x.body, y.body);
                    });
}

}  // namespace divrepair::lang
