#include "doctest.h"
#include "j2aig/aig.hpp"
#include "j2aig/errors.hpp"

using namespace j2aig;

TEST_CASE("and2 folds constants and trivial operands") {
    Aig g;
    Lit x = g.add_input("x");
    CHECK(g.and2(x, kFalse) == kFalse);
    CHECK(g.and2(kTrue, x) == x);
    CHECK(g.and2(x, x) == x);
    CHECK(g.and2(x, lit_not(x)) == kFalse);
    CHECK(g.num_ands() == 0);
}

TEST_CASE("and2 hashes structurally and ignores operand order") {
    Aig g;
    Lit x = g.add_input("x");
    Lit y = g.add_input("y");
    Lit a = g.and2(x, y);
    CHECK(g.and2(y, x) == a);
    CHECK(g.num_ands() == 1);
    CHECK(g.and2(x, lit_not(y)) != a);
    CHECK(g.num_ands() == 2);
}

TEST_CASE("and_raw keeps duplicates") {
    Aig g;
    Lit x = g.add_input();
    Lit y = g.add_input();
    CHECK(g.and_raw(x, y) != g.and_raw(x, y));
    CHECK(g.num_ands() == 2);
}

TEST_CASE("derived gates on constants") {
    Aig g;
    CHECK(g.or2(kFalse, kFalse) == kFalse);
    CHECK(g.or2(kFalse, kTrue) == kTrue);
    CHECK(g.xor2(kTrue, kTrue) == kFalse);
    CHECK(g.xor2(kTrue, kFalse) == kTrue);
    CHECK(g.mux(kTrue, kFalse, kTrue) == kFalse);
    CHECK(g.mux(kFalse, kFalse, kTrue) == kTrue);
    CHECK(g.and_all({}) == kTrue);
    CHECK(g.or_all({}) == kFalse);
}

TEST_CASE("latch fanins and well-formedness") {
    Aig g;
    Lit in = g.add_input("in");
    Lit r = g.add_latch("r");
    g.set_next(r, g.and2(r, in));
    g.add_output("o", r);
    CHECK_NOTHROW(g.check());
    CHECK(g.init_of(r) == kFalse);
    CHECK(g.output("o") == r);
    CHECK(g.find_output("o") == 0);
    CHECK(g.find_output("p") == -1);

    g.set_init(r, in);
    CHECK_NOTHROW(g.check());
    Lit s = g.add_latch("s");
    g.set_next(s, s);
    g.set_init(r, s);
    CHECK_THROWS_AS(g.check(), Error);
}

TEST_CASE("levels count the longest AND path") {
    Aig g;
    Lit a = g.add_input();
    Lit b = g.add_input();
    Lit c = g.add_input();
    g.add_output("o", g.and2(g.and2(a, b), c));
    CHECK(g.levels() == 2);
    Aig empty;
    CHECK(empty.levels() == 0);
}
