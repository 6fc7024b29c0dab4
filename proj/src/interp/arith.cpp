#include "j2aig/arith.hpp"

namespace j2aig::arith {

int64_t wrap(__int128 v, int width) {
    if (width >= 64) return static_cast<int64_t>(static_cast<uint64_t>(v));
    const unsigned __int128 m = (static_cast<unsigned __int128>(1) << width) - 1;
    unsigned __int128 u = static_cast<unsigned __int128>(v) & m;
    if (u >> (width - 1)) return static_cast<int64_t>(static_cast<__int128>(u) - (static_cast<__int128>(1) << width));
    return static_cast<int64_t>(u);
}

int64_t min_value(int width) { return width >= 64 ? INT64_MIN : -(int64_t{1} << (width - 1)); }
int64_t max_value(int width) { return width >= 64 ? INT64_MAX : (int64_t{1} << (width - 1)) - 1; }

uint64_t mask(int64_t v, int width) {
    if (width >= 64) return static_cast<uint64_t>(v);
    return static_cast<uint64_t>(v) & ((uint64_t{1} << width) - 1);
}

namespace {

Result checked(__int128 exact, int width) {
    Result r;
    r.value = wrap(exact, width);
    r.overflow = exact < min_value(width) || exact > max_value(width);
    return r;
}

} // namespace

Result add(int64_t a, int64_t b, int width) { return checked(static_cast<__int128>(a) + b, width); }
Result sub(int64_t a, int64_t b, int width) { return checked(static_cast<__int128>(a) - b, width); }
Result mul(int64_t a, int64_t b, int width) { return checked(static_cast<__int128>(a) * b, width); }
Result neg(int64_t a, int width) { return checked(-static_cast<__int128>(a), width); }

Result div(int64_t a, int64_t b, int width) {
    Result r;
    if (b == 0) {
        r.value = -1;
        r.divzero = true;
        return r;
    }
    if (a == min_value(width) && b == -1) {
        r.value = a;
        r.overflow = true;
        return r;
    }
    r.value = wrap(static_cast<__int128>(a) / b, width);
    return r;
}

Result mod(int64_t a, int64_t b, int width) {
    Result r;
    if (b == 0) {
        r.value = a;
        r.divzero = true;
        return r;
    }
    if (a == min_value(width) && b == -1) {
        r.overflow = true;
        return r;
    }
    r.value = wrap(static_cast<__int128>(a) % b, width);
    return r;
}

} // namespace j2aig::arith
