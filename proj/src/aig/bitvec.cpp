#include "j2aig/bitvec.hpp"

#include "j2aig/errors.hpp"

namespace j2aig::bv {

namespace {

void same_width(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size() || a.empty()) throw Error("bit-vector width mismatch");
}

// Ripple-carry a + b + cin; returns the sum and the carry into and out of
// the top bit.
struct Ripple {
    BitVec sum;
    Lit carry_in_top = kFalse;
    Lit carry_out = kFalse;
};

Ripple ripple(Aig& g, const BitVec& a, const BitVec& b, Lit cin) {
    Ripple r;
    Lit c = cin;
    for (size_t i = 0; i < a.size(); ++i) {
        if (i + 1 == a.size()) r.carry_in_top = c;
        Lit axb = g.xor2(a[i], b[i]);
        r.sum.push_back(g.xor2(axb, c));
        c = g.or2(g.and2(a[i], b[i]), g.and2(axb, c));
    }
    r.carry_out = c;
    return r;
}

BitVec invert(const BitVec& a) {
    BitVec out;
    for (Lit l : a) out.push_back(lit_not(l));
    return out;
}

// Magnitude of a signed vector, as an unsigned vector of the same width.
BitVec magnitude(Aig& g, const BitVec& a) { return mux(g, a.back(), neg(g, a).value, a); }

} // namespace

BitVec constant(int64_t value, int width) {
    BitVec out;
    for (int i = 0; i < width; ++i) out.push_back(i < 64 && ((static_cast<uint64_t>(value) >> i) & 1U) ? kTrue : kFalse);
    return out;
}

BitVec inputs(Aig& g, const std::string& name, int width) {
    BitVec out;
    for (int i = 0; i < width; ++i) out.push_back(g.add_input(name + ":" + std::to_string(i)));
    return out;
}

BitVec sext(const BitVec& a, int width) {
    BitVec out(a.begin(), a.begin() + std::min<std::ptrdiff_t>(width, static_cast<std::ptrdiff_t>(a.size())));
    while (static_cast<int>(out.size()) < width) out.push_back(a.empty() ? kFalse : a.back());
    return out;
}

BitVec zext(const BitVec& a, int width) {
    BitVec out(a.begin(), a.begin() + std::min<std::ptrdiff_t>(width, static_cast<std::ptrdiff_t>(a.size())));
    while (static_cast<int>(out.size()) < width) out.push_back(kFalse);
    return out;
}

ArithOut add(Aig& g, const BitVec& a, const BitVec& b) {
    same_width(a, b);
    Ripple r = ripple(g, a, b, kFalse);
    return {r.sum, g.xor2(r.carry_in_top, r.carry_out)};
}

ArithOut sub(Aig& g, const BitVec& a, const BitVec& b) {
    same_width(a, b);
    Ripple r = ripple(g, a, invert(b), kTrue);
    return {r.sum, g.xor2(r.carry_in_top, r.carry_out)};
}

ArithOut neg(Aig& g, const BitVec& a) { return sub(g, constant(0, static_cast<int>(a.size())), a); }

ArithOut mul(Aig& g, const BitVec& a, const BitVec& b, bool want_overflow) {
    same_width(a, b);
    const int w = static_cast<int>(a.size());
    // The full signed product needs 2w bits to expose overflow.
    const int pw = want_overflow ? 2 * w : w;
    BitVec x = sext(a, pw);
    BitVec y = sext(b, pw);
    BitVec acc = constant(0, pw);
    for (int i = 0; i < pw; ++i) {
        if (y[static_cast<size_t>(i)] == kFalse) continue;
        BitVec partial = constant(0, pw);
        for (int j = 0; j + i < pw; ++j)
            partial[static_cast<size_t>(j + i)] = g.and2(x[static_cast<size_t>(j)], y[static_cast<size_t>(i)]);
        acc = ripple(g, acc, partial, kFalse).sum;
    }
    ArithOut out;
    out.value = BitVec(acc.begin(), acc.begin() + w);
    if (want_overflow) {
        // Representable iff the top w+1 bits all equal the sign bit.
        std::vector<Lit> diff;
        for (int i = w; i < pw; ++i) diff.push_back(g.xor2(acc[static_cast<size_t>(i)], acc[static_cast<size_t>(w - 1)]));
        out.overflow = g.or_all(diff);
    }
    return out;
}

DivOut divmod(Aig& g, const BitVec& a, const BitVec& b) {
    same_width(a, b);
    const size_t w = a.size();
    BitVec n = magnitude(g, a);
    BitVec d = magnitude(g, b);
    // Restoring division over w+1 bits so that the magnitude of MIN fits.
    BitVec dz = zext(d, static_cast<int>(w) + 1);
    BitVec rem = constant(0, static_cast<int>(w) + 1);
    BitVec quo(w, kFalse);
    for (size_t k = w; k-- > 0;) {
        BitVec shifted(w + 1, kFalse);
        shifted[0] = n[k];
        for (size_t i = 1; i <= w; ++i) shifted[i] = rem[i - 1];
        Ripple diff = ripple(g, shifted, invert(dz), kTrue);
        Lit fits = diff.carry_out; // no borrow: shifted >= d
        quo[k] = fits;
        rem = mux(g, fits, diff.sum, shifted);
    }
    BitVec r(rem.begin(), rem.begin() + static_cast<std::ptrdiff_t>(w));
    Lit sa = a.back();
    Lit sb = b.back();
    BitVec q_signed = mux(g, g.xor2(sa, sb), neg(g, quo).value, quo);
    BitVec r_signed = mux(g, sa, neg(g, r).value, r);

    DivOut out;
    out.divzero = lit_not(any(g, b));
    out.quotient = mux(g, out.divzero, constant(-1, static_cast<int>(w)), q_signed);
    out.remainder = mux(g, out.divzero, a, r_signed);
    BitVec min = constant(0, static_cast<int>(w));
    min.back() = kTrue;
    out.overflow = g.and2(eq(g, a, min), eq(g, b, constant(-1, static_cast<int>(w))));
    return out;
}

Lit eq(Aig& g, const BitVec& a, const BitVec& b) {
    same_width(a, b);
    std::vector<Lit> bits;
    for (size_t i = 0; i < a.size(); ++i) bits.push_back(g.xnor2(a[i], b[i]));
    return g.and_all(bits);
}

Lit ult(Aig& g, const BitVec& a, const BitVec& b) {
    same_width(a, b);
    // a < b iff a - b borrows.
    return lit_not(ripple(g, a, invert(b), kTrue).carry_out);
}

Lit slt(Aig& g, const BitVec& a, const BitVec& b) {
    same_width(a, b);
    BitVec x = a;
    BitVec y = b;
    x.back() = lit_not(x.back());
    y.back() = lit_not(y.back());
    return ult(g, x, y);
}

Lit sle(Aig& g, const BitVec& a, const BitVec& b) { return lit_not(slt(g, b, a)); }

Lit any(Aig& g, const BitVec& a) { return g.or_all(a); }

BitVec mux(Aig& g, Lit sel, const BitVec& a, const BitVec& b) {
    same_width(a, b);
    BitVec out;
    for (size_t i = 0; i < a.size(); ++i) out.push_back(g.mux(sel, a[i], b[i]));
    return out;
}

} // namespace j2aig::bv
