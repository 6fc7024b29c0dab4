#include <random>

#include "doctest.h"
#include "j2aig/bmc.hpp"
#include "j2aig/parser.hpp"
#include "j2aig/pipeline.hpp"
#include "j2aig/sweep.hpp"
#include "oracles.hpp"
#include "pipeline_helpers.hpp"
#include "random_circuit.hpp"

using namespace j2aig;

namespace {

Aig toggle() {
    Aig g;
    Lit r = g.add_latch("r", kFalse);
    g.set_next(r, lit_not(r));
    g.add_output("o", r);
    return g;
}

Circuit compiled(const std::string& src, int width) {
    ProveConfig cfg;
    cfg.width = width;
    return compile(parse_source(src), cfg);
}

} // namespace

TEST_CASE("constant false target is safe to any depth and inductive") {
    Aig g = toggle();
    for (int k : {0, 1, 5, 20}) {
        Verdict v = bmc_check(g, kFalse, k);
        CHECK(v.kind == Verdict::Kind::SafeUpTo);
        CHECK(v.depth == k);
    }
    Verdict ind = prove_by_induction(g, kFalse, 1);
    CHECK(ind.kind == Verdict::Kind::Proved);
    CHECK(ind.depth == 1);
}

TEST_CASE("toggle register reaches the target at frame one") {
    Aig g = toggle();
    Verdict v = bmc_check(g, "o", 10);
    REQUIRE(v.is_cex());
    CHECK(v.depth == 1);
    CHECK(v.inputs.size() == 2);
    CHECK(to_string(v).find("1") != std::string::npos);
}

TEST_CASE("input-initialized latch can start true") {
    Aig g;
    Lit in = g.add_input("in");
    Lit r = g.add_latch("r", in);
    g.set_next(r, r);
    g.add_output("o", r);
    Verdict v = bmc_check(g, "o", 3);
    REQUIRE(v.is_cex());
    CHECK(v.depth == 0);
    CHECK(v.inputs.at(0).at(0));
}

TEST_CASE("unknown output names are reported") {
    Aig g = toggle();
    CHECK_THROWS(bmc_check(g, "nope", 3));
}

TEST_CASE("bmc agrees with explicit reachability on random circuits") {
    std::mt19937_64 rng(51);
    int cex = 0;
    for (int it = 0; it < 60; ++it) {
        testing::RandomCircuitOptions opt;
        opt.latches = 2 + static_cast<int>(rng() % 9);
        opt.inputs = 1 + static_cast<int>(rng() % 4);
        opt.ands = 10 + static_cast<int>(rng() % 40);
        Aig g = testing::random_circuit(rng, opt);
        for (size_t o = 0; o < g.outputs().size(); ++o) {
            auto expect = testing::explicit_reachability(g, o, 15);
            Verdict v = bmc_check(g, g.outputs()[o].second, 15);
            if (expect) {
                REQUIRE(v.is_cex());
                CHECK(v.depth == *expect);
                SimTrace t = simulate(g, v.inputs, v.depth + 1);
                CHECK(t.value(v.depth, g.outputs()[o].second));
                ++cex;
            } else {
                CHECK(v.kind == Verdict::Kind::SafeUpTo);
            }
        }
    }
    CHECK(cex > 0);
}

TEST_CASE("induction proofs are never contradicted by deeper bmc") {
    std::mt19937_64 rng(53);
    int proved = 0;
    for (int it = 0; it < 80; ++it) {
        testing::RandomCircuitOptions opt;
        opt.latches = 2 + static_cast<int>(rng() % 6);
        Aig g = testing::random_circuit(rng, opt);
        for (size_t o = 0; o < g.outputs().size(); ++o) {
            const int k = 1 + static_cast<int>(rng() % 4);
            Verdict ind = prove_by_induction(g, g.outputs()[o].second, k);
            auto reach = testing::explicit_reachability(g, o, 3 * k);
            if (ind.kind == Verdict::Kind::Proved) {
                ++proved;
                CHECK_FALSE(reach.has_value());
                CHECK_FALSE(bmc_check(g, g.outputs()[o].second, 3 * k).is_cex());
            }
            if (ind.is_cex()) {
                REQUIRE(reach.has_value());
                CHECK(ind.depth == *reach);
            }
        }
    }
    CHECK(proved > 0);
}

TEST_CASE("monitor counts steps and saturates") {
    Circuit c = compiled("int x; while (true) { x = x + 1; }", 3);
    Aig m = add_termination_monitor(c.aig, 3);
    const Lit nonterm = m.output("nonterm");
    CHECK(m.latches().size() > c.aig.latches().size());
    SimTrace t = simulate(m, {}, 8);
    for (int s = 0; s < 8; ++s) CHECK(t.value(s, nonterm) == (s >= 3));
    CHECK_THROWS(add_termination_monitor(c.aig, 0));
    CHECK_THROWS(add_termination_monitor(toggle(), 3));
}

TEST_CASE("straight-line program terminates within n + 2 steps") {
    Circuit c = compiled("int x; int y; x = 1; y = x + 1; x = y * 2;", 4);
    TerminationResult r = termination_scheme(c.aig, 5);
    CHECK(r.termination.kind == Verdict::Kind::Proved);
    CHECK(r.correctness.kind == Verdict::Kind::Proved);
    // One step short of the run length cannot prove termination.
    CHECK(termination_scheme(c.aig, 2).termination.kind == Verdict::Kind::Unknown);
}

TEST_CASE("infinite loop is never shown to terminate") {
    Circuit c = compiled("int x; while (true) { x = x + 1; }", 4);
    for (int theta : {1, 10, 40}) {
        TerminationResult r = termination_scheme(c.aig, theta);
        CHECK(r.termination.kind == Verdict::Kind::Unknown);
        CHECK_FALSE(r.termination.inputs.empty());
        CHECK(r.correctness.kind == Verdict::Kind::Unknown);
    }
}

TEST_CASE("defective search: base case of induction finds the violation") {
    ProveConfig cfg;
    cfg.width = 4;
    Circuit c = compile(parse_file(testing::program_path("array_search_defective.j")), cfg);
    Verdict bmc = bmc_check(c.aig, kOutViolation, 40);
    REQUIRE(bmc.is_cex());
    Verdict ind = prove_by_induction(c.aig, kOutViolation, bmc.depth + 2);
    REQUIRE(ind.is_cex());
    CHECK(ind.depth == bmc.depth);
}

TEST_CASE("fixed search: termination bound from measured run lengths is conclusive") {
    ProveConfig cfg;
    cfg.width = 4;
    Program p = parse_file(testing::program_path("array_search_fixed.j"));
    Circuit c = compile(p, cfg);
    // Longest run over every index range of the size-3 array, measured by
    // the one-loop interpreter with a never-matching key.
    InterpConfig ic;
    ic.width = 4;
    uint64_t longest = 0;
    for (int s = -2; s <= 3; ++s)
        for (int e = -2; e <= 3; ++e) {
            Values in{{"a", {0, 0, 0}}, {"d", {1}}, {"s", {s}}, {"e", {e}}, {"n", {3}}};
            RunResult r = run_olp(*c.olp, in, ic);
            REQUIRE(r.terminated);
            longest = std::max(longest, r.steps);
        }
    SweepResult sw = sweep_stuck_registers(c.aig);
    TerminationResult r = termination_scheme(sw.aig, static_cast<int>(longest) + 1);
    CHECK(r.termination.kind == Verdict::Kind::Proved);
    CHECK(r.correctness.kind == Verdict::Kind::Proved);
}
