#include <functional>

#include "doctest.h"
#include "j2aig/arith.hpp"
#include "j2aig/bitvec.hpp"
#include "j2aig/simulate.hpp"
#include "oracles.hpp"

using namespace j2aig;

namespace {

// Combinational harness: two w-bit operands, any number of result vectors.
struct Harness {
    Aig g;
    BitVec a;
    BitVec b;
    int w;

    explicit Harness(int width) : w(width) {
        a = bv::inputs(g, "a", w);
        b = bv::inputs(g, "b", w);
    }

    std::vector<bool> frame(int64_t x, int64_t y) const {
        std::vector<bool> f;
        for (int i = 0; i < w; ++i) f.push_back(((x >> i) & 1) != 0);
        for (int i = 0; i < w; ++i) f.push_back(((y >> i) & 1) != 0);
        return f;
    }

    SimTrace run(int64_t x, int64_t y) const { return simulate(g, {frame(x, y)}, 1); }

    static int64_t value(const SimTrace& t, const BitVec& v) {
        int64_t out = 0;
        for (size_t i = 0; i < v.size(); ++i)
            if (t.value(0, v[i])) out |= int64_t{1} << i;
        if (!v.empty() && t.value(0, v.back())) out -= int64_t{1} << v.size();
        return out;
    }
};

} // namespace

TEST_CASE("operators agree with the wide-integer oracle exhaustively") {
    for (int w = 1; w <= 5; ++w) {
        testing::RefOps ref{w};
        Harness h(w);
        auto add = bv::add(h.g, h.a, h.b);
        auto sub = bv::sub(h.g, h.a, h.b);
        auto mul = bv::mul(h.g, h.a, h.b);
        auto neg = bv::neg(h.g, h.a);
        auto dm = bv::divmod(h.g, h.a, h.b);
        Lit eq = bv::eq(h.g, h.a, h.b);
        Lit lt = bv::slt(h.g, h.a, h.b);
        Lit le = bv::sle(h.g, h.a, h.b);
        Lit ult = bv::ult(h.g, h.a, h.b);
        for (int64_t x = ref.min(); x <= ref.max(); ++x)
            for (int64_t y = ref.min(); y <= ref.max(); ++y) {
                INFO("w=" << w << " x=" << x << " y=" << y);
                SimTrace t = h.run(x, y);
                CHECK(Harness::value(t, add.value) == ref.add(x, y));
                CHECK(t.value(0, add.overflow) == ref.add_overflows(x, y));
                CHECK(Harness::value(t, sub.value) == ref.sub(x, y));
                CHECK(t.value(0, sub.overflow) == ref.sub_overflows(x, y));
                CHECK(Harness::value(t, mul.value) == ref.mul(x, y));
                CHECK(t.value(0, mul.overflow) == ref.mul_overflows(x, y));
                CHECK(Harness::value(t, neg.value) == ref.neg(x));
                CHECK(Harness::value(t, dm.quotient) == ref.div(x, y));
                CHECK(Harness::value(t, dm.remainder) == ref.mod(x, y));
                CHECK(t.value(0, dm.divzero) == (y == 0));
                CHECK(t.value(0, dm.overflow) == (x == ref.min() && y == -1));
                CHECK(t.value(0, eq) == (x == y));
                CHECK(t.value(0, lt) == (x < y));
                CHECK(t.value(0, le) == (x <= y));
                CHECK(t.value(0, ult) == (arith::mask(x, w) < arith::mask(y, w)));
            }
    }
}

TEST_CASE("mux selects per bit") {
    Aig g;
    Lit s = g.add_input("s");
    BitVec a = bv::constant(5, 4);
    BitVec b = bv::constant(-6, 4);
    BitVec m = bv::mux(g, s, a, b);
    for (bool sel : {false, true}) {
        SimTrace t = simulate(g, {{sel}}, 1);
        int64_t v = 0;
        for (size_t i = 0; i < m.size(); ++i)
            if (t.value(0, m[i])) v |= int64_t{1} << i;
        CHECK(v == (sel ? 5 : 10));
    }
    // Equal arms need no select logic.
    CHECK(bv::mux(g, s, a, a) == a);
}

TEST_CASE("constants and extensions") {
    CHECK(bv::constant(-1, 3) == BitVec{kTrue, kTrue, kTrue});
    CHECK(bv::constant(2, 3) == BitVec{kFalse, kTrue, kFalse});
    CHECK(bv::sext(bv::constant(-2, 2), 4) == bv::constant(-2, 4));
    CHECK(bv::zext(bv::constant(-2, 2), 4) == bv::constant(2, 4));
    Aig g;
    CHECK_THROWS(bv::add(g, bv::constant(0, 2), bv::constant(0, 3)));
}
