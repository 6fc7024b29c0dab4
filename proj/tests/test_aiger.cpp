#include <random>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "j2aig/aiger.hpp"
#include "j2aig/errors.hpp"
#include "j2aig/simulate.hpp"
#include "random_circuit.hpp"

using namespace j2aig;

namespace {

bool same_behaviour(const Aig& a, const Aig& b, std::mt19937_64& rng) {
    if (a.outputs().size() != b.outputs().size()) return false;
    InputFrames f = testing::random_frames(rng, a, 20);
    SimTrace ta = simulate(a, f, 20);
    SimTrace tb = simulate(b, f, 20);
    for (int s = 0; s < 20; ++s)
        for (size_t o = 0; o < a.outputs().size(); ++o)
            if (ta.value(s, a.outputs()[o].second) != tb.value(s, b.outputs()[o].second)) return false;
    return true;
}

} // namespace

TEST_CASE("empty circuit header") {
    Aig g;
    CHECK(write_aiger(g) == "aag 0 0 0 0 0\n");
    AigerStats st = aiger_header(write_aiger(g));
    CHECK(st.max_var == 0);
}

TEST_CASE("hand-written one-latch file") {
    const char* text = "aag 1 0 1 1 0\n2 3\n2\nl0 r\no0 q\n";
    Aig g = read_aiger(text);
    REQUIRE(g.latches().size() == 1);
    CHECK(g.inputs().empty());
    CHECK(g.node(g.latches()[0]).name == "r");
    CHECK(g.outputs().at(0).first == "q");
    Lit r = make_lit(g.latches()[0]);
    CHECK(g.next_of(r) == lit_not(r));
    CHECK(g.init_of(r) == kFalse);
    SimTrace t = simulate(g, {}, 4);
    CHECK(t.value(1, g.outputs()[0].second));
    CHECK_FALSE(t.value(2, g.outputs()[0].second));
}

TEST_CASE("AIGER 1.9 latch reset values") {
    Aig one = read_aiger("aag 1 0 1 1 0\n2 2 1\n2\n");
    CHECK(one.init_of(make_lit(one.latches()[0])) == kTrue);
    // A latch initialized to itself is uninitialized and reads a fresh input.
    Aig free = read_aiger("aag 1 0 1 1 0\n2 2 2\n2\n");
    REQUIRE(free.inputs().size() == 1);
    CHECK(free.node(free.inputs()[0]).name.find("::init") != std::string::npos);
}

TEST_CASE("writer output for a small design") {
    Aig g;
    Lit x = g.add_input("x");
    Lit y = g.add_input("y");
    Lit r = g.add_latch("r", kFalse);
    g.set_next(r, g.and2(x, lit_not(y)));
    g.add_output("o", g.and2(r, x));
    CHECK(write_aiger(g) ==
          "aag 5 2 1 1 2\n"
          "2\n4\n"
          "6 8\n"
          "10\n"
          "8 5 2\n"
          "10 6 2\n"
          "i0 x\ni1 y\nl0 r\no0 o\n");
}

TEST_CASE("input-initialized latches round-trip through the annotation") {
    Aig g;
    Lit x = g.add_input("x");
    Lit r = g.add_latch("r", x);
    g.set_next(r, lit_not(r));
    g.add_output("o", r);
    std::string text = write_aiger(g);
    CHECK(text.find("c\n") != std::string::npos);
    CHECK(text.find("j2aig init 0 2") != std::string::npos);
    Aig back = read_aiger(text);
    CHECK(back.init_of(make_lit(back.latches()[0])) == make_lit(back.inputs()[0]));
    CHECK(write_aiger(back) == text);
}

TEST_CASE("round trip on random circuits") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 100; ++it) {
        Aig g = testing::random_circuit(rng, {});
        std::string text = write_aiger(g);
        Aig back = read_aiger(text);
        CHECK(write_aiger(back) == text);
        CHECK(back.latches().size() == g.latches().size());
        CHECK(back.inputs().size() == g.inputs().size());
        CHECK(same_behaviour(g, back, rng));
        AigerStats st = aiger_header(text);
        CHECK(st.inputs == g.inputs().size());
        CHECK(st.latches == g.latches().size());
        CHECK(st.max_var == st.inputs + st.latches + st.ands);
    }
}

TEST_CASE("malformed files are rejected") {
    CHECK_THROWS_AS(read_aiger(""), FormatError);
    CHECK_THROWS_AS(read_aiger("aig 0 0 0 0 0\n"), FormatError);
    CHECK_THROWS_AS(read_aiger("aag 1 1 0 0 0\n"), FormatError);
    CHECK_THROWS_AS(read_aiger("aag 1 1 0 0 0\n3\n"), FormatError);
    CHECK_THROWS_AS(read_aiger("aag 2 0 0 1 1\n4\n4 4 2\n"), FormatError);
    CHECK_THROWS_AS(read_aiger("aag 3 0 0 0 2\n4 6 2\n6 4 2\n"), FormatError);
    CHECK_THROWS_AS(read_aiger("aag 1 0 0 0 0 1\n2\n"), FormatError);
    CHECK_THROWS_AS(read_aiger_file("/nonexistent/x.aag"), IoError);
}
