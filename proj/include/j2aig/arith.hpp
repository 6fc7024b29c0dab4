// Width-w two's complement arithmetic with overflow and division flags.
#pragma once

#include <cstdint>

namespace j2aig::arith {

int64_t wrap(__int128 v, int width);
int64_t min_value(int width);
int64_t max_value(int width);
/// Keeps the low `width` bits as an unsigned value.
uint64_t mask(int64_t v, int width);

struct Result {
    int64_t value = 0;
    bool overflow = false;
    bool divzero = false;
};

Result add(int64_t a, int64_t b, int width);
Result sub(int64_t a, int64_t b, int width);
Result mul(int64_t a, int64_t b, int width);
Result neg(int64_t a, int width);
/// Truncating division. x/0 gives -1 with `divzero`; MIN/-1 gives MIN with
/// `overflow`.
Result div(int64_t a, int64_t b, int width);
/// Remainder matching `div`: x%0 gives x, MIN%-1 gives 0 with `overflow`.
Result mod(int64_t a, int64_t b, int width);

} // namespace j2aig::arith
