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

#include <string>
#include <vector>

#include "divrepair/common/errors.hpp"
#include "divrepair/common/parallel.hpp"
#include "divrepair/lang/interpreter.hpp"
#include "divrepair/lang/parser.hpp"
#include "divrepair/lang/printer.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/random_program.hpp"

namespace {

using namespace divrepair;
using lang::ExecStatus;

lang::ExecOutcome run(const std::string& src, const std::string& input = "",
                      std::uint64_t fuel = lang::kDefaultFuel) {
  return lang::execute(lang::parse(src), input, fuel, false);
}

std::string body(const std::string& stmts, const std::string& decls = "") {
  return "func main() {\n" + decls + "\n" + stmts + "\n}\n";
}

TEST_CASE("parse: minimal program") {
  const auto p = lang::parse("func main() { print 1; }");
  CHECK(p.functions.size() == 1);
  CHECK(lang::statement_count(p) == 1);
  CHECK(p.functions[0].body[0].id == 1);
}

TEST_CASE("parse: empty input is a syntax error") {
  CHECK_THROWS_AS(lang::parse(""), SyntaxError);
}

TEST_CASE("parse: syntax errors carry line and column") {
  try {
    lang::parse("func main() {\n  print 1\n}\n");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(std::string(e.what()).rfind("3:1:", 0) == 0);
  }
}

TEST_CASE("parse: semantic errors") {
  CHECK_THROWS_AS(lang::parse("func f() { print 1; }"), SemanticError);
  CHECK_THROWS_AS(lang::parse("func main() { print x; }"), SemanticError);
  CHECK_THROWS_AS(lang::parse("func main(int a) { print a; }"), SemanticError);
  CHECK_THROWS_AS(lang::parse("func main(): int { return 1; }"), SemanticError);
  CHECK_THROWS_AS(lang::parse("func main() { int x; int x; print 1; }"), SemanticError);
  CHECK_THROWS_AS(lang::parse("func main() { g(); }"), SemanticError);
  CHECK_THROWS_AS(
      lang::parse("func f(int a) { print a; } func main() { f(1, 2); }"),
      SemanticError);
  CHECK_THROWS_AS(
      lang::parse("func f() { print 1; } func main() { int x; x = f(); }"),
      SemanticError);
  CHECK_THROWS_AS(lang::parse("func f() { } func f() { } func main() { }"),
                  SemanticError);
  CHECK_THROWS_AS(lang::parse("func main() { print 99999999999999999999; }"),
                  SyntaxError);
}

TEST_CASE("parse: ids are assigned in pre-order source order") {
  const auto p = lang::parse(body(
      "if x > 0 { x = 1; print x; } else { print 2; }\nwhile x > 0 { x = x - 1; }",
      "int x;"));
  std::vector<lang::StatementId> ids;
  std::vector<lang::StmtKind> kinds;
  lang::for_each_stmt(p, [&](const lang::Stmt& s) {
    ids.push_back(s.id);
    kinds.push_back(s.kind);
  });
  CHECK(ids == std::vector<lang::StatementId>{1, 2, 3, 4, 5, 6});
  CHECK(kinds[0] == lang::StmtKind::kIf);
  CHECK(kinds[3] == lang::StmtKind::kPrint);
  CHECK(kinds[4] == lang::StmtKind::kWhile);
}

TEST_CASE("parse: digits reference has the hand-counted statement count") {
  // read, if, negate, print, divide, while, print, divide
  const auto p = lang::parse_file(testing::corpus_dir() / "digits-b1" / "reference.mini");
  CHECK(lang::statement_count(p) == 8);
  CHECK(lang::max_statement_id(p) == 8);
  const auto buggy = lang::parse_file(testing::corpus_dir() / "digits-b1" / "program.mini");
  CHECK(lang::statement_count(buggy) == 9);
}

TEST_CASE("print: output contains the statement") {
  const auto text = lang::pretty_print(lang::parse("func main() { print 1; }"));
  CHECK(text.find("print 1") != std::string::npos);
}

TEST_CASE("print: round trip on every corpus program") {
  for (const auto& id : testing::bug_ids()) {
    for (const char* file : {"program.mini", "reference.mini"}) {
      CAPTURE(id);
      const auto p = lang::parse_file(testing::corpus_dir() / id / file);
      const auto text = lang::pretty_print(p);
      CHECK(lang::parse(text) == p);
      CHECK(lang::pretty_print(lang::parse(text)) == text);
    }
  }
}

TEST_CASE("print: round trip on 1000 random ASTs") {
  testing::RandomProgram gen(20260101);
  for (int i = 0; i < 1000; ++i) {
    const auto p = gen.next();
    const auto text = lang::pretty_print(p);
    lang::Program back;
    REQUIRE_NOTHROW(back = lang::parse(text));
    if (!(back == p)) {
      FAIL_CHECK("round trip changed the AST:\n" << text);
      break;
    }
  }
}

TEST_CASE("print: parentheses follow precedence and associativity") {
  using lang::Expr;
  using lang::Op;
  const auto sub = Expr::binary(Op::kSub, Expr::int_literal(1),
                                Expr::binary(Op::kSub, Expr::int_literal(2),
                                             Expr::int_literal(3)));
  CHECK(lang::pretty_print(sub) == "1 - (2 - 3)");
  const auto left = Expr::binary(Op::kSub,
                                 Expr::binary(Op::kSub, Expr::int_literal(1),
                                              Expr::int_literal(2)),
                                 Expr::int_literal(3));
  CHECK(lang::pretty_print(left) == "1 - 2 - 3");
  const auto mul = Expr::binary(Op::kMul,
                                Expr::binary(Op::kAdd, Expr::int_literal(1),
                                             Expr::int_literal(2)),
                                Expr::int_literal(3));
  CHECK(lang::pretty_print(mul) == "(1 + 2) * 3");
  CHECK(lang::pretty_print(Expr::unary(Op::kNeg, Expr::int_literal(4))) == "-4");
}

TEST_CASE("print: floats use shortest round-trip text") {
  CHECK(lang::format_float(2.0) == "2.0");
  CHECK(lang::format_float(0.1) == "0.1");
  CHECK(lang::format_float(-1.25) == "-1.25");
  CHECK(lang::format_float(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("execute: arithmetic and printing") {
  const auto out = run("func main() { print 1+2; }", "", 1000);
  CHECK(out.stdout_text == "3\n");
  CHECK(out.status == ExecStatus::kCompleted);
  CHECK(run(body("print 2 + 3 * 4;")).stdout_text == "14\n");
  CHECK(run(body("print (2 + 3) * 4;")).stdout_text == "20\n");
  CHECK(run(body("print 10 - 3 - 2;")).stdout_text == "5\n");
  CHECK(run(body("print 7 / 2;")).stdout_text == "3\n");
  CHECK(run(body("print 0 - 7 / 2;")).stdout_text == "-3\n");
  CHECK(run(body("print 7 % 3;")).stdout_text == "1\n");
  CHECK(run(body("print 1.0 / 4;")).stdout_text == "0.25\n");
  CHECK(run(body("print 3 + 0.5;")).stdout_text == "3.5\n");
  CHECK(run(body("print 2.0 * 2;")).stdout_text == "4.0\n");
  CHECK(run(body("print 9223372036854775807 + 1;")).stdout_text ==
        "-9223372036854775808\n");
}

TEST_CASE("execute: conditions accept comparisons and numbers") {
  CHECK(run(body("if 1 < 2 && !(3 == 4) { print 1; } else { print 0; }")).stdout_text == "1\n");
  CHECK(run(body("if 0 { print 1; } else if 2 { print 2; } else { print 3; }")).stdout_text == "2\n");
  CHECK(run(body("if 0.0 || 0 { print 1; } else { print 0; }")).stdout_text == "0\n");
}

TEST_CASE("execute: infinite loop exhausts fuel") {
  const auto out = run("func main() { while 1 { } }", "", 1000);
  CHECK(out.status == ExecStatus::kFuelExhausted);
  CHECK(out.steps_used <= 1000);
}

TEST_CASE("execute: runtime errors") {
  CHECK(run(body("print 1 / 0;")).status == ExecStatus::kRuntimeError);
  CHECK(run(body("print 1 % 0;")).status == ExecStatus::kRuntimeError);
  CHECK(run(body("print 1.0 / 0.0;")).status == ExecStatus::kRuntimeError);
  CHECK(run(body("read x;", "int x;"), "").status == ExecStatus::kRuntimeError);
  CHECK(run(body("read x;", "int x;"), "abc").status == ExecStatus::kRuntimeError);
  CHECK(run(body("x = 1.5;", "int x;")).status == ExecStatus::kRuntimeError);
  CHECK(run(body("print 1 < 2;")).status == ExecStatus::kRuntimeError);
  const auto deep = run("func f(int n): int { return f(n + 1); } func main() { print f(0); }");
  CHECK(deep.status == ExecStatus::kRuntimeError);
  // Output printed before the fault is kept.
  const auto partial = run(body("print 1; print 1 / 0;"));
  CHECK(partial.stdout_text == "1\n");
}

TEST_CASE("execute: reads, locals and functions") {
  const std::string src =
      "func add(int a, float b): float { return a + b; }\n"
      "func main() { int x; float y; read x; read y; print add(x, y); print y; }";
  CHECK(run(src, "3 0.25").stdout_text == "3.25\n0.25\n");
  CHECK(run(src, " 3\n\n-2 ").stdout_text == "1.0\n-2.0\n");
  CHECK(run(body("print x; print z;", "int x; float z;")).stdout_text == "0\n0.0\n");
}

TEST_CASE("execute: digits reference matches its expected outputs") {
  const auto dir = testing::corpus_dir() / "digits-b1";
  const auto p = lang::parse_file(dir / "reference.mini");
  for (const auto& t : harness::load_suite(dir / "tests" / "whitebox",
                                           harness::Origin::kWhitebox)) {
    CAPTURE(t.id);
    const auto out = lang::execute(p, t.input, lang::kDefaultFuel, false);
    CHECK(out.status == ExecStatus::kCompleted);
    CHECK(out.stdout_text == t.expected_output);
  }
  CHECK(lang::execute(p, "-4560", lang::kDefaultFuel, false).stdout_text ==
        "0\n6\n5\n4\n");
}

TEST_CASE("execute: steps count statements and loop tests") {
  // read + the while itself + 4 condition tests + 3 iterations of 2
  // statements + print
  const auto out = run(body("read n; while n > 0 { n = n - 1; x = x + 1; } print x;",
                            "int n, x;"),
                       "3");
  CHECK(out.steps_used == 1 + 1 + 4 + 6 + 1);
  // Exactly enough fuel completes; one less does not.
  CHECK(run(body("read n; while n > 0 { n = n - 1; x = x + 1; } print x;", "int n, x;"),
            "3", 13).status == ExecStatus::kCompleted);
  const auto short_run = run(
      body("read n; while n > 0 { n = n - 1; x = x + 1; } print x;", "int n, x;"), "3", 12);
  CHECK(short_run.status == ExecStatus::kFuelExhausted);
  CHECK(short_run.steps_used == 12);
}

TEST_CASE("execute: coverage records branch directions") {
  const auto p = lang::parse(body(
      "read x; if x > 0 { print 1; } else { print 2; } while x > 0 { x = x - 1; }",
      "int x;"));
  const auto pos = lang::execute(p, "2", lang::kDefaultFuel, false);
  CHECK(pos.coverage == std::vector<lang::BranchId>{{2, true}, {5, false}, {5, true}});
  const auto neg = lang::execute(p, "-1", lang::kDefaultFuel, false);
  CHECK(neg.coverage == std::vector<lang::BranchId>{{2, false}, {5, false}});
}

TEST_CASE("trace: points and sample layout") {
  const auto p = lang::parse(
      "func sq(int v): int { return v * v; }\n"
      "func main() { int i, s; while i < 3 { s = s + sq(i); i = i + 1; } print s; }");
  const auto points = lang::program_points(p);
  REQUIRE(points.size() == 5);
  CHECK(lang::to_string(points[0].point) == "entry(sq)");
  CHECK(points[0].variables == std::vector<std::string>{"v"});
  CHECK(lang::to_string(points[1].point) == "exit(sq)");
  CHECK(points[1].variables == std::vector<std::string>{"v", "return"});
  CHECK(lang::to_string(points[2].point) == "entry(main)");
  CHECK(points[2].variables.empty());
  CHECK(lang::to_string(points[3].point) == "loop_head(2)");
  CHECK(points[3].variables == std::vector<std::string>{"i", "s"});
  CHECK(lang::to_string(points[4].point) == "exit(main)");

  const auto out = lang::execute(p, "", lang::kDefaultFuel, true);
  REQUIRE(out.trace);
  std::vector<int> per_point(points.size(), 0);
  for (const auto& s : out.trace->samples) ++per_point[s.point];
  // The loop condition is evaluated four times: one sample each.
  CHECK(per_point == std::vector<int>{3, 3, 1, 4, 1});
  CHECK(out.stdout_text == "5\n");
  const auto& last = out.trace->samples.back();
  CHECK(*out.trace->value(last, "s") == 5.0);
  for (const auto& s : out.trace->samples) {
    if (out.trace->point_of(s).function == "sq" &&
        out.trace->point_of(s).kind == lang::PointKind::kExit) {
      CHECK(*out.trace->value(s, "return") ==
            *out.trace->value(s, "v") * *out.trace->value(s, "v"));
    }
  }
}

TEST_CASE("trace: loop sample count equals condition evaluations") {
  testing::RandomProgram gen(7);
  SeededRng rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto p = gen.next();
    const auto input = testing::random_input(rng);
    const auto traced = lang::execute(p, input, 5000, true);
    // Every loop-head sample precedes one condition evaluation, and each
    // evaluation costs one step, so samples never exceed steps.
    std::size_t loop_samples = 0;
    for (const auto& s : traced.trace->samples) {
      loop_samples += traced.trace->point_of(s).kind == lang::PointKind::kLoopHead;
    }
    CHECK(loop_samples <= traced.steps_used);
    // Tracing never changes behaviour.
    const auto plain = lang::execute(p, input, 5000, false);
    CHECK(plain.stdout_text == traced.stdout_text);
    CHECK(plain.status == traced.status);
    CHECK(plain.steps_used == traced.steps_used);
  }
}

TEST_CASE("execute: determinism and fuel monotonicity on random programs") {
  testing::RandomProgram gen(99);
  SeededRng rng(100);
  int completed = 0;
  for (int i = 0; i < 300; ++i) {
    const auto p = gen.next();
    const auto input = testing::random_input(rng);
    const auto a = lang::execute(p, input, 3000, true);
    const auto b = lang::execute(p, input, 3000, true);
    CHECK(a == b);
    CHECK(a.steps_used <= 3000);
    if (a.status == ExecStatus::kFuelExhausted) continue;
    ++completed;
    for (std::uint64_t more : {a.steps_used, a.steps_used + 1, std::uint64_t{100000}}) {
      const auto c = lang::execute(p, input, more, true);
      CHECK(c == a);
    }
  }
  CHECK(completed > 100);
}

TEST_CASE("execute: concurrent runs of one program agree") {
  const auto p = lang::parse_file(testing::corpus_dir() / "median-b1" / "program.mini");
  std::vector<std::string> inputs;
  for (int i = 0; i < 64; ++i) {
    inputs.push_back(std::to_string(i % 7) + " " + std::to_string(i % 5) + " " +
                     std::to_string(i % 3));
  }
  std::vector<lang::ExecOutcome> serial, parallel(inputs.size());
  for (const auto& in : inputs) serial.push_back(lang::execute(p, in, lang::kDefaultFuel, true));
  parallel_for(inputs.size(), Jobs{4}, [&](std::size_t i) {
    parallel[i] = lang::execute(p, inputs[i], lang::kDefaultFuel, true);
  });
  CHECK(serial == parallel);
}

}  // namespace
