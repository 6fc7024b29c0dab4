#include "doctest.h"
#include "j2aig/arith.hpp"
#include "j2aig/errors.hpp"
#include "j2aig/interp.hpp"
#include "j2aig/parser.hpp"
#include "j2aig/preprocess.hpp"
#include "oracles.hpp"
#include "pipeline_helpers.hpp"

using namespace j2aig;

namespace {

InterpConfig cfg_w(int w) {
    InterpConfig c;
    c.width = w;
    return c;
}

} // namespace

TEST_CASE("defective array search returns one past the range on the sample inputs") {
    Program p = parse_file(testing::program_path("array_search_defective.j"));
    Values in{{"a", {-1, -1, -1, -5}}, {"s", {3}}, {"e", {3}}, {"n", {4}}, {"d", {-3}}};
    InterpConfig c = cfg_w(4);
    RunResult j = run_j(p, in, c);
    REQUIRE(j.terminated);
    CHECK(j.env.at("rv").at(0) == 4);
    CHECK(j.env.at("post::as").at(0) == 0);
    CHECK(j.env.at("pre::as").at(0) == 1);

    RunResult core = run_jcore(preprocess(p), in, c);
    CHECK(core.env.at("rv").at(0) == 4);
}

TEST_CASE("out-of-bounds read is flagged and throws in strict mode") {
    Program p = parse_source("int [2] a; int i; int x; x = a[i];");
    Values in{{"i", {2}}};
    InterpConfig c = cfg_w(8);
    RunResult r = run_jcore(inject_nondet_init(label(p)), in, c);
    CHECK(r.flags.oob);
    c.check_bounds = true;
    c.strict = true;
    CHECK_THROWS_AS(run_jcore(inject_nondet_init(label(p)), in, c), OutOfBounds);
}

TEST_CASE("division by zero follows the total semantics") {
    Program p = parse_source("int x; int y; int q; int r; q = x / y; r = x % y;");
    RunResult res = run_jcore(inject_nondet_init(label(p)), {{"x", {5}}, {"y", {0}}}, cfg_w(8));
    CHECK(res.flags.divzero);
    CHECK(res.env.at("q").at(0) == -1);
    CHECK(res.env.at("r").at(0) == 5);
    InterpConfig strict = cfg_w(8);
    strict.strict = true;
    CHECK_THROWS_AS(run_jcore(inject_nondet_init(label(p)), {{"x", {5}}, {"y", {0}}}, strict), DivisionByZero);
}

TEST_CASE("overflow wraps and sets the flag") {
    Program p = parse_source("int x; x = x + 1;");
    RunResult r = run_jcore(inject_nondet_init(label(p)), {{"x", {7}}}, cfg_w(4));
    CHECK(r.env.at("x").at(0) == -8);
    CHECK(r.flags.overflow);
}

TEST_CASE("step limit on a non-terminating loop") {
    Program p = parse_source("int x; while (true) { x = x + 1; }");
    InterpConfig c = cfg_w(8);
    c.max_steps = 100;
    RunResult r = run_jcore(inject_nondet_init(label(p)), {}, c);
    CHECK_FALSE(r.terminated);
    CHECK(r.steps == 100);
    c.strict = true;
    CHECK_THROWS_AS(run_jcore(inject_nondet_init(label(p)), {}, c), StepLimitExceeded);
}

TEST_CASE("quantifiers evaluate directly in the J interpreter") {
    Program p = parse_source("int [3] a; bool r; bool t; r = forall(int k)[0 .. 2]{ a[k] > 0 }; t = exists(int k)[0 .. 2]{ a[k] == 2 };");
    RunResult r = run_j(p, {{"a", {1, 2, 3}}}, cfg_w(8));
    CHECK(r.env.at("r").at(0) == 1);
    CHECK(r.env.at("t").at(0) == 1);
    r = run_j(p, {{"a", {1, 0, 3}}}, cfg_w(8));
    CHECK(r.env.at("r").at(0) == 0);
    CHECK(r.env.at("t").at(0) == 0);
}

TEST_CASE("recursive factorial in the J interpreter") {
    Program p = parse_file(testing::program_path("factorial.j"));
    InterpConfig c = cfg_w(8);
    c.max_depth = 5;
    RunResult r = run_j(p, {{"n", {5}}}, c);
    CHECK(r.env.at("rv").at(0) == 120);
    CHECK(r.env.at("post::f").at(0) == 1);
    c.max_depth = 3;
    CHECK(run_j(p, {{"n", {5}}}, c).flags.depth);
}

TEST_CASE("trace records one environment per step") {
    Program p = parse_source("int x; int y; x = 1; y = x + 1;");
    InterpConfig c = cfg_w(8);
    c.record_trace = true;
    RunResult r = run_jcore(inject_nondet_init(label(p)), {}, c);
    REQUIRE(r.trace.size() == 2);
    CHECK(r.trace[0].at("x").at(0) == 1);
    CHECK(r.trace[0].at("y").at(0) == 0);
    CHECK(r.trace[1].at("y").at(0) == 2);
    CHECK(r.pcs == std::vector<int>{1, 2});
}

TEST_CASE("interpreter arithmetic matches the wide-integer oracle") {
    for (int w : {3, 4, 5}) {
        testing::RefOps ref{w};
        for (int64_t a = ref.min(); a <= ref.max(); ++a)
            for (int64_t b = ref.min(); b <= ref.max(); ++b) {
                CHECK(arith::add(a, b, w).value == ref.add(a, b));
                CHECK(arith::add(a, b, w).overflow == ref.add_overflows(a, b));
                CHECK(arith::sub(a, b, w).value == ref.sub(a, b));
                CHECK(arith::mul(a, b, w).value == ref.mul(a, b));
                CHECK(arith::mul(a, b, w).overflow == ref.mul_overflows(a, b));
                CHECK(arith::div(a, b, w).value == ref.div(a, b));
                CHECK(arith::mod(a, b, w).value == ref.mod(a, b));
                CHECK(arith::div(a, b, w).divzero == (b == 0));
            }
    }
}
