#include <random>

#include "doctest.h"
#include "j2aig/simulate.hpp"
#include "j2aig/sweep.hpp"
#include "random_circuit.hpp"

using namespace j2aig;

namespace {

bool same_outputs(const Aig& a, const Aig& b, const InputFrames& frames, int steps) {
    SimTrace ta = simulate(a, frames, steps);
    SimTrace tb = simulate(b, frames, steps);
    for (int s = 0; s < steps; ++s)
        for (size_t o = 0; o < a.outputs().size(); ++o)
            if (ta.value(s, a.outputs()[o].second) != tb.value(s, b.outputs()[o].second)) return false;
    return true;
}

} // namespace

TEST_CASE("stuck-at-zero register is removed") {
    Aig g;
    Lit in = g.add_input("in");
    Lit r = g.add_latch("r", kFalse);
    g.set_next(r, kFalse);
    g.add_output("o", g.and2(r, in));
    SweepResult s = sweep_stuck_registers(g);
    CHECK(s.aig.latches().empty());
    CHECK(s.stuck == 1);
    CHECK(s.aig.output("o") == kFalse);
}

TEST_CASE("toggle register survives") {
    Aig g;
    Lit r = g.add_latch("r", kFalse);
    g.set_next(r, lit_not(r));
    g.add_output("o", r);
    SweepResult s = sweep_stuck_registers(g);
    CHECK(s.aig.latches().size() == 1);
    CHECK(s.stuck == 0);
}

TEST_CASE("register stuck only after feedback through another stuck register") {
    Aig g;
    Lit in = g.add_input("in");
    Lit a = g.add_latch("a", kFalse);
    Lit b = g.add_latch("b", kFalse);
    g.set_next(a, g.and2(a, in));
    g.set_next(b, g.or2(b, a));
    g.add_output("o", b);
    SweepResult s = sweep_stuck_registers(g);
    CHECK(s.aig.latches().empty());
}

TEST_CASE("register outside every output cone is dropped") {
    Aig g;
    Lit in = g.add_input("in");
    Lit keep = g.add_latch("keep", kFalse);
    g.set_next(keep, in);
    Lit dead = g.add_latch("dead", kFalse);
    g.set_next(dead, g.xor2(dead, in));
    g.add_output("o", keep);
    SweepResult s = sweep_stuck_registers(g);
    CHECK(s.aig.latches().size() == 1);
    CHECK(s.dangling == 1);
    CHECK(s.aig.inputs().size() == 1);
}

TEST_CASE("sweep preserves output behaviour on random circuits") {
    std::mt19937_64 rng(23);
    int reduced = 0;
    for (int it = 0; it < 100; ++it) {
        testing::RandomCircuitOptions opt;
        opt.latches = 4 + static_cast<int>(rng() % 8);
        opt.ands = 20 + static_cast<int>(rng() % 40);
        Aig g = testing::random_circuit(rng, opt);
        SweepResult s = sweep_stuck_registers(g);
        CHECK(s.aig.latches().size() <= g.latches().size());
        CHECK(s.aig.inputs().size() == g.inputs().size());
        REQUIRE(s.aig.outputs().size() == g.outputs().size());
        CHECK_NOTHROW(s.aig.check());
        for (int k = 0; k < 5; ++k) CHECK(same_outputs(g, s.aig, testing::random_frames(rng, g, 30), 30));
        reduced += s.aig.latches().size() < g.latches().size();
    }
    CHECK(reduced > 0);
}
