#include <random>

#include "doctest.h"
#include "j2aig/errors.hpp"
#include "j2aig/labels.hpp"
#include "j2aig/lexer.hpp"
#include "j2aig/parser.hpp"
#include "j2aig/printer.hpp"
#include "pipeline_helpers.hpp"
#include "random_program.hpp"

using namespace j2aig;

namespace {

std::vector<Tok> kinds(const std::string& src) {
    std::vector<Tok> out;
    for (const auto& t : tokenize(src)) out.push_back(t.kind);
    return out;
}

const Stmt& stmt_at(const LabeledProgram& lp, int label) { return *lp.at(label).stmt; }

} // namespace

TEST_CASE("tokenize simple declaration") {
    CHECK(kinds("int x;") == std::vector<Tok>{Tok::KwInt, Tok::Ident, Tok::Semi, Tok::End});
}

TEST_CASE("tokenize precondition header") {
    auto toks = tokenize("@pre as { 0<=s }");
    std::vector<Tok> want{Tok::AtPre, Tok::Ident, Tok::LBrace, Tok::Number, Tok::Le, Tok::Ident, Tok::RBrace, Tok::End};
    REQUIRE(toks.size() == want.size());
    for (size_t k = 0; k < want.size(); ++k) CHECK(toks[k].kind == want[k]);
    CHECK(toks[1].text == "as");
    CHECK(toks[3].value == 0);
}

TEST_CASE("tokenize drops comments and tracks lines") {
    auto toks = tokenize("// c\nint /* x\n y */ z;");
    REQUIRE(toks.size() == 4);
    CHECK(toks[0].line == 2);
    CHECK(toks[1].text == "z");
    CHECK(toks[1].line == 3);
}

TEST_CASE("illegal character is a lex error") {
    try {
        tokenize("x $ y");
        FAIL("expected LexError");
    } catch (const LexError& e) {
        CHECK(e.line == 1);
        CHECK(e.col == 3);
    }
}

TEST_CASE("parse scalar program") {
    Program p = parse_source("int x; x = 1;");
    REQUIRE(p.decls.size() == 1);
    CHECK(p.decls[0].name == "x");
    CHECK(p.decls[0].type == Type::Int);
    REQUIRE(p.body.size() == 1);
    CHECK(p.body[0].kind == StmtKind::Assign);
}

TEST_CASE("parse the array search function") {
    const char* src = R"(
int search(int [] a, int d, int s, int e, int n) {
  int i;
  i = s;
  while (i <= e) {
    if (a[i] == d) { break; } else { i = i + 1; }
  }
  return i;
}
int [4] arr; int d; int rv;
rv = search(arr, d, 0, 3, 4);
)";
    Program p = parse_source(src);
    REQUIRE(p.funcs.size() == 1);
    const FunctionDecl& f = p.funcs[0];
    CHECK(f.params.size() == 5);
    CHECK(f.params[0].is_array());
    REQUIRE(f.body.size() == 3);
    CHECK(f.body[1].kind == StmtKind::While);
    CHECK(f.body[1].body[0].kind == StmtKind::If);
    CHECK(f.body[1].body[0].body[0].kind == StmtKind::Break);
    CHECK(f.body[2].kind == StmtKind::Return);
}

TEST_CASE("call inside an expression is rejected") {
    const char* src = "int foo(int a) { return a; } int x; int a; x = foo(a) + 1;";
    CHECK_THROWS_AS(parse_source(src), RestrictionError);
}

TEST_CASE("two returns are rejected") {
    const char* src = "int foo(int a) { return a; return a; } int x; x = foo(x);";
    CHECK_THROWS_AS(parse_source(src), Error);
}

TEST_CASE("declarations alone do not form a program") {
    CHECK_THROWS_AS(parse_source("int x;"), ParseError);
    CHECK_THROWS_AS(parse_source(""), ParseError);
}

TEST_CASE("paper declaration forms") {
    Program p = parse_source("int [5] in; int b[2][3]; bool f; in[0] = b[1][2];");
    CHECK(p.find_decl("in")->size() == 5);
    CHECK(p.find_decl("b")->dims == std::vector<int>{2, 3});
    CHECK(p.find_decl("f")->type == Type::Bool);
}

TEST_CASE("index2d flattens row-major") {
    CHECK(*constant_value(index2d(ex::int_const(1), ex::int_const(2), 4)) == 6);
    CHECK(*constant_value(index2d(ex::int_const(0), ex::int_const(0), 4)) == 0);
    ExprPtr e = index2d(ex::var("i"), ex::var("j"), 3);
    CHECK(print_expr(e) == "i * 3 + j");
}

TEST_CASE("labels of the array search body") {
    const char* src = R"(
int [4] a; int d; int s; int e; int i; int rv;
i = s;
while (i <= e) {
  if (a[i] == d) { break; } else { i = i + 1; }
}
rv = i;
)";
    LabeledProgram lp = label(parse_source(src));
    CHECK(lp.first() == 1);
    CHECK(lp.count() == 6);
    CHECK(lp.done() == 7);
    CHECK(stmt_at(lp, 2).kind == StmtKind::While);
    CHECK(lp.at(2).body_target == 3);
    CHECK(lp.at(2).next == 6);
    CHECK(lp.at(3).then_target == 4);
    CHECK(lp.at(3).else_target == 5);
    // Last statement of a loop body continues at the loop; break leaves it.
    CHECK(lp.at(5).next == 2);
    CHECK(lp.at(4).next == 6);
    CHECK(lp.at(6).next == lp.done());
}

TEST_CASE("empty else block continues after the conditional") {
    LabeledProgram lp = label(parse_source("int x; if (x > 0) { x = 1; } x = 2;"));
    CHECK(lp.at(1).else_target == lp.at(1).next);
    CHECK(lp.at(1).next == 3);
}

TEST_CASE("single statement continues at done") {
    LabeledProgram lp = label(parse_source("int x; x = 1;"));
    CHECK(lp.at(1).next == lp.done());
    CHECK(lp.done() == 2);
}

TEST_CASE("every successor is a label or done") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 100; ++it) {
        LabeledProgram lp = label(parse_source(testing::random_jcore_source(rng, {})));
        for (const auto& info : lp.infos()) {
            for (int t : {info.next, info.then_target, info.else_target, info.body_target})
                CHECK((t == 0 || (t >= 1 && t <= lp.done())));
            CHECK(info.next >= 1);
        }
    }
}

TEST_CASE("print then parse is the identity on random programs") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        std::string src = testing::random_jcore_source(rng, {});
        Program p = parse_source(src);
        std::string printed = print_program(p);
        Program q = parse_source(printed);
        CHECK(print_program(q) == printed);
        LabeledProgram a = label(p);
        LabeledProgram b = label(q);
        REQUIRE(a.count() == b.count());
        for (int l = 1; l <= a.count(); ++l) {
            CHECK(a.at(l).stmt->kind == b.at(l).stmt->kind);
            CHECK(a.at(l).next == b.at(l).next);
        }
    }
}

TEST_CASE("sample programs parse") {
    for (const char* f : {"array_search_defective.j", "array_search_fixed.j", "factorial.j", "factorial_wrong.j", "copy.j"})
        CHECK_NOTHROW(parse_file(testing::program_path(f)));
    CHECK_THROWS_AS(parse_file(testing::program_path("missing.j")), IoError);
}
