// Bit-vector operator circuits over an Aig. Vectors are least significant
// bit first; arithmetic is two's complement.
#pragma once

#include <cstdint>
#include <vector>

#include "j2aig/aig.hpp"

namespace j2aig {

using BitVec = std::vector<Lit>;

namespace bv {

BitVec constant(int64_t value, int width);
/// Fresh inputs named `name:k`.
BitVec inputs(Aig& g, const std::string& name, int width);

BitVec sext(const BitVec& a, int width);
BitVec zext(const BitVec& a, int width);

struct ArithOut {
    BitVec value;
    Lit overflow = kFalse;
};

ArithOut add(Aig& g, const BitVec& a, const BitVec& b);
ArithOut sub(Aig& g, const BitVec& a, const BitVec& b);
ArithOut neg(Aig& g, const BitVec& a);
/// Low half of the product; the overflow literal is only built when asked.
ArithOut mul(Aig& g, const BitVec& a, const BitVec& b, bool want_overflow = true);

struct DivOut {
    BitVec quotient;
    BitVec remainder;
    Lit divzero = kFalse;
    Lit overflow = kFalse;
};

/// Signed truncating division by restoring division of magnitudes.
/// Division by zero yields quotient -1 and remainder = dividend.
DivOut divmod(Aig& g, const BitVec& a, const BitVec& b);

Lit eq(Aig& g, const BitVec& a, const BitVec& b);
Lit slt(Aig& g, const BitVec& a, const BitVec& b);
Lit sle(Aig& g, const BitVec& a, const BitVec& b);
Lit ult(Aig& g, const BitVec& a, const BitVec& b);
Lit any(Aig& g, const BitVec& a);
BitVec mux(Aig& g, Lit sel, const BitVec& a, const BitVec& b);

} // namespace bv

} // namespace j2aig
