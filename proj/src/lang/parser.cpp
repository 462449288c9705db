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

#include "divrepair/lang/parser.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "divrepair/common/errors.hpp"

namespace divrepair::lang {
namespace {

enum class Tok {
  kEnd,
  kIdent,
  kInt,
  kFloat,
  kFunc,
  kIntType,
  kFloatType,
  kIf,
  kElse,
  kWhile,
  kRead,
  kPrint,
  kReturn,
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kComma,
  kSemi,
  kColon,
  kAssign,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kPercent,
  kLt,
  kLe,
  kGt,
  kGe,
  kEq,
  kNe,
  kAndAnd,
  kOrOr,
  kBang,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  int line = 1;
  int column = 1;
};

const std::map<std::string, Tok, std::less<>>& keywords() {
  static const std::map<std::string, Tok, std::less<>> table = {
      {"func", Tok::kFunc},   {"int", Tok::kIntType},
      {"float", Tok::kFloatType}, {"if", Tok::kIf},
      {"else", Tok::kElse},   {"while", Tok::kWhile},
      {"read", Tok::kRead},   {"print", Tok::kPrint},
      {"return", Tok::kReturn},
  };
  return table;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::kEnd;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        lex_word(t);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_number(t);
      } else {
        lex_punct(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  void lex_word(Token& t) {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_')) {
      advance();
    }
    t.text = std::string(src_.substr(start, pos_ - start));
    auto it = keywords().find(t.text);
    t.kind = it == keywords().end() ? Tok::kIdent : it->second;
  }

  void lex_number(Token& t) {
    const std::size_t start = pos_;
    bool is_float = false;
    auto digits = [&] {
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    };
    digits();
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      is_float = true;
      advance();
      digits();
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t k = 1;
      if (peek(k) == '+' || peek(k) == '-') ++k;
      if (std::isdigit(static_cast<unsigned char>(peek(k)))) {
        is_float = true;
        for (std::size_t i = 0; i < k; ++i) advance();
        digits();
      }
    }
    t.text = std::string(src_.substr(start, pos_ - start));
    t.kind = is_float ? Tok::kFloat : Tok::kInt;
  }

  void lex_punct(Token& t) {
    const char c = peek();
    const char n = peek(1);
    auto two = [&](Tok kind) {
      t.kind = kind;
      t.text = std::string{c, n};
      advance();
      advance();
    };
    auto one = [&](Tok kind) {
      t.kind = kind;
      t.text = std::string(1, c);
      advance();
    };
    switch (c) {
      case '(': return one(Tok::kLParen);
      case ')': return one(Tok::kRParen);
      case '{': return one(Tok::kLBrace);
      case '}': return one(Tok::kRBrace);
      case ',': return one(Tok::kComma);
      case ';': return one(Tok::kSemi);
      case ':': return one(Tok::kColon);
      case '+': return one(Tok::kPlus);
      case '-': return one(Tok::kMinus);
      case '*': return one(Tok::kStar);
      case '/': return one(Tok::kSlash);
      case '%': return one(Tok::kPercent);
      case '<': return n == '=' ? two(Tok::kLe) : one(Tok::kLt);
      case '>': return n == '=' ? two(Tok::kGe) : one(Tok::kGt);
      case '=': return n == '=' ? two(Tok::kEq) : one(Tok::kAssign);
      case '!': return n == '=' ? two(Tok::kNe) : one(Tok::kBang);
      case '&':
        if (n == '&') return two(Tok::kAndAnd);
        break;
      case '|':
        if (n == '|') return two(Tok::kOrOr);
        break;
      default:
        break;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", line_,
                      column_);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

std::string describe(const Token& t) {
  return t.kind == Tok::kEnd ? std::string("end of input") : "'" + t.text + "'";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Program program() {
    Program p;
    do {
      p.functions.push_back(function());
    } while (!at(Tok::kEnd));
    return p;
  }

 private:
  const Token& cur() const { return tokens_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError("expected " + expected + ", found " + describe(cur()),
                      cur().line, cur().column);
  }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(what);
    return tokens_[pos_++];
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }

  std::optional<Type> maybe_type() {
    if (accept(Tok::kIntType)) return Type::kInt;
    if (accept(Tok::kFloatType)) return Type::kFloat;
    return std::nullopt;
  }

  Function function() {
    Function f;
    expect(Tok::kFunc, "'func'");
    f.name = expect(Tok::kIdent, "function name").text;
    expect(Tok::kLParen, "'('");
    if (!at(Tok::kRParen)) {
      do {
        auto type = maybe_type();
        if (!type) fail("parameter type");
        f.params.push_back({*type, expect(Tok::kIdent, "parameter name").text});
      } while (accept(Tok::kComma));
    }
    expect(Tok::kRParen, "')'");
    if (accept(Tok::kColon)) {
      f.return_type = maybe_type();
      if (!f.return_type) fail("return type");
    }
    expect(Tok::kLBrace, "'{'");
    while (auto type = maybe_type()) {
      do {
        f.locals.push_back({*type, expect(Tok::kIdent, "variable name").text});
      } while (accept(Tok::kComma));
      expect(Tok::kSemi, "';'");
    }
    while (!at(Tok::kRBrace)) f.body.push_back(statement());
    expect(Tok::kRBrace, "'}'");
    return f;
  }

  Block block() {
    expect(Tok::kLBrace, "'{'");
    Block b;
    while (!at(Tok::kRBrace)) b.push_back(statement());
    expect(Tok::kRBrace, "'}'");
    return b;
  }

  Stmt statement() {
    Stmt s;
    s.id = next_id_++;
    switch (cur().kind) {
      case Tok::kIf: {
        ++pos_;
        s.kind = StmtKind::kIf;
        s.expr = expression();
        s.then_body = block();
        if (accept(Tok::kElse)) {
          s.has_else = true;
          if (at(Tok::kIf)) {
            s.else_body.push_back(statement());
          } else {
            s.else_body = block();
          }
        }
        return s;
      }
      case Tok::kWhile:
        ++pos_;
        s.kind = StmtKind::kWhile;
        s.expr = expression();
        s.then_body = block();
        return s;
      case Tok::kRead:
        ++pos_;
        s.kind = StmtKind::kRead;
        s.target = expect(Tok::kIdent, "variable name").text;
        expect(Tok::kSemi, "';'");
        return s;
      case Tok::kPrint:
        ++pos_;
        s.kind = StmtKind::kPrint;
        s.expr = expression();
        expect(Tok::kSemi, "';'");
        return s;
      case Tok::kReturn:
        ++pos_;
        s.kind = StmtKind::kReturn;
        if (!at(Tok::kSemi)) s.expr = expression();
        expect(Tok::kSemi, "';'");
        return s;
      case Tok::kIdent: {
        const Token name = tokens_[pos_++];
        if (at(Tok::kLParen)) {
          s.kind = StmtKind::kCall;
          s.expr = Expr::call(name.text, arguments());
        } else {
          expect(Tok::kAssign, "'=' or '('");
          s.kind = StmtKind::kAssign;
          s.target = name.text;
          s.expr = expression();
        }
        expect(Tok::kSemi, "';'");
        return s;
      }
      default:
        fail("statement");
    }
  }

  std::vector<Expr> arguments() {
    expect(Tok::kLParen, "'('");
    std::vector<Expr> args;
    if (!at(Tok::kRParen)) {
      do {
        args.push_back(expression());
      } while (accept(Tok::kComma));
    }
    expect(Tok::kRParen, "')'");
    return args;
  }

  // Precedence climbing, lowest first: || && (== !=) (< <= > >=) (+ -) (* / %).
  static int precedence(Tok k) {
    switch (k) {
      case Tok::kOrOr: return 1;
      case Tok::kAndAnd: return 2;
      case Tok::kEq: case Tok::kNe: return 3;
      case Tok::kLt: case Tok::kLe: case Tok::kGt: case Tok::kGe: return 4;
      case Tok::kPlus: case Tok::kMinus: return 5;
      case Tok::kStar: case Tok::kSlash: case Tok::kPercent: return 6;
      default: return 0;
    }
  }

  static Op binary_op(Tok k) {
    switch (k) {
      case Tok::kOrOr: return Op::kOr;
      case Tok::kAndAnd: return Op::kAnd;
      case Tok::kEq: return Op::kEq;
      case Tok::kNe: return Op::kNe;
      case Tok::kLt: return Op::kLt;
      case Tok::kLe: return Op::kLe;
      case Tok::kGt: return Op::kGt;
      case Tok::kGe: return Op::kGe;
      case Tok::kPlus: return Op::kAdd;
      case Tok::kMinus: return Op::kSub;
      case Tok::kStar: return Op::kMul;
      case Tok::kSlash: return Op::kDiv;
      case Tok::kPercent: return Op::kMod;
      default: return Op::kNone;
    }
  }

  Expr expression(int min_prec = 1) {
    Expr lhs = unary();
    for (;;) {
      const int prec = precedence(cur().kind);
      if (prec < min_prec || prec == 0) return lhs;
      const Op op = binary_op(cur().kind);
      ++pos_;
      Expr rhs = expression(prec + 1);
      lhs = Expr::binary(op, std::move(lhs), std::move(rhs));
    }
  }

  Expr unary() {
    if (accept(Tok::kMinus)) return Expr::unary(Op::kNeg, unary());
    if (accept(Tok::kBang)) return Expr::unary(Op::kNot, unary());
    return primary();
  }

  Expr primary() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::kInt: {
        std::int64_t v = 0;
        auto [ptr, ec] =
            std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
          throw SyntaxError("integer literal out of range", t.line, t.column);
        }
        ++pos_;
        return Expr::int_literal(v);
      }
      case Tok::kFloat: {
        double v = 0;
        auto [ptr, ec] =
            std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
          throw SyntaxError("float literal out of range", t.line, t.column);
        }
        ++pos_;
        return Expr::float_literal(v);
      }
      case Tok::kIdent: {
        std::string name = t.text;
        ++pos_;
        if (at(Tok::kLParen)) return Expr::call(std::move(name), arguments());
        return Expr::variable(std::move(name));
      }
      case Tok::kLParen: {
        ++pos_;
        Expr e = expression();
        expect(Tok::kRParen, "')'");
        return e;
      }
      default:
        fail("expression");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  StatementId next_id_ = 1;
};

// --- resolution -------------------------------------------------------------

class Resolver {
 public:
  explicit Resolver(Program& p) : program_(p) {}

  void run() {
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < program_.functions.size(); ++i) {
      const Function& f = program_.functions[i];
      if (!index.emplace(f.name, static_cast<int>(i)).second) {
        throw SemanticError("duplicate function '" + f.name + "'");
      }
    }
    auto main_it = index.find("main");
    if (main_it == index.end()) throw SemanticError("no function named 'main'");
    const Function& main_fn = program_.functions[main_it->second];
    if (!main_fn.params.empty()) {
      throw SemanticError("'main' must take no parameters");
    }
    if (main_fn.return_type) {
      throw SemanticError("'main' must not declare a return type");
    }
    program_.main_index = main_it->second;
    functions_ = std::move(index);
    for (Function& f : program_.functions) function(f);
  }

 private:
  void function(Function& f) {
    slots_.clear();
    for (const VarDecl& d : f.variables()) {
      const int slot = static_cast<int>(slots_.size());
      if (!slots_.emplace(d.name, slot).second) {
        throw SemanticError("duplicate variable '" + d.name + "' in '" +
                            f.name + "'");
      }
    }
    current_ = &f;
    for (Stmt& s : f.body) statement(s);
  }

  int slot_of(const std::string& name) const {
    auto it = slots_.find(name);
    if (it == slots_.end()) {
      throw SemanticError("undeclared variable '" + name + "' in '" +
                          current_->name + "'");
    }
    return it->second;
  }

  void statement(Stmt& s) {
    switch (s.kind) {
      case StmtKind::kAssign:
      case StmtKind::kRead:
        s.slot = slot_of(s.target);
        if (s.kind == StmtKind::kAssign) expr(*s.expr);
        break;
      case StmtKind::kIf:
      case StmtKind::kWhile:
      case StmtKind::kPrint:
        expr(*s.expr);
        break;
      case StmtKind::kReturn:
        if (s.expr.has_value() != current_->return_type.has_value()) {
          throw SemanticError(current_->return_type
                                  ? "'" + current_->name + "' must return a value"
                                  : "'" + current_->name +
                                        "' cannot return a value");
        }
        if (s.expr) expr(*s.expr);
        break;
      case StmtKind::kCall:
        call(*s.expr, /*needs_value=*/false);
        break;
    }
    for (Stmt& c : s.then_body) statement(c);
    for (Stmt& c : s.else_body) statement(c);
  }

  void call(Expr& e, bool needs_value) {
    auto it = functions_.find(e.name);
    if (it == functions_.end()) {
      throw SemanticError("call to unknown function '" + e.name + "'");
    }
    const Function& callee = program_.functions[it->second];
    if (callee.params.size() != e.operands.size()) {
      throw SemanticError("'" + e.name + "' expects " +
                          std::to_string(callee.params.size()) + " arguments");
    }
    if (needs_value && !callee.return_type) {
      throw SemanticError("'" + e.name + "' does not return a value");
    }
    e.callee = it->second;
    for (Expr& a : e.operands) expr(a);
  }

  void expr(Expr& e) {
    switch (e.kind) {
      case ExprKind::kLiteral:
        return;
      case ExprKind::kVariable:
        e.slot = slot_of(e.name);
        return;
      case ExprKind::kCall:
        call(e, /*needs_value=*/true);
        return;
      case ExprKind::kUnary:
      case ExprKind::kBinary:
        for (Expr& o : e.operands) expr(o);
        return;
    }
  }

  Program& program_;
  std::map<std::string, int> functions_;
  std::map<std::string, int> slots_;
  const Function* current_ = nullptr;
};

}  // namespace

Program parse(std::string_view source) {
  Parser parser(Lexer(source).run());
  Program program = parser.program();
  resolve(program);
  return program;
}

Program parse_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

void resolve(Program& program) { Resolver(program).run(); }

bool try_resolve(Program& program) {
  try {
    resolve(program);
    return true;
  } catch (const SemanticError&) {
    return false;
  }
}

}  // namespace divrepair::lang
