#pragma once

// Exact nonnegative counts. GMP carries the arbitrary-precision values;
// the summation hot paths run in unsigned __int128 and promote on overflow.

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "dedekind/errors.hpp"

namespace dedekind {

using BigCount = mpz_class;
using u128 = unsigned __int128;

inline BigCount bigcount_from_u128(u128 v) {
    BigCount hi(static_cast<unsigned long>(v >> 64));
    BigCount out = hi << 64;
    out += static_cast<unsigned long>(v);
    return out;
}

inline BigCount bigcount_from_decimal(const std::string& s) {
    if (s.empty()) throw invalid_input_error("empty decimal string");
    for (char c : s)
        if (c < '0' || c > '9') throw invalid_input_error("bad decimal string: " + s);
    return BigCount(s, 10);
}

inline std::string to_decimal(const BigCount& v) { return v.get_str(10); }

inline BigCount bigcount_pow2(unsigned exponent) {
    BigCount one = 1;
    return one << exponent;
}

// false when the value needs more than 128 bits
inline bool bigcount_to_u128(const BigCount& v, u128* out) {
    if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 128) return false;
    BigCount lo = v & BigCount((~0ul));
    BigCount hi = v >> 64;
    *out = (static_cast<u128>(hi.get_ui()) << 64) | lo.get_ui();
    return true;
}

// term = a*b*c as u128; false when the product does not fit.
inline bool checked_mul_u128(u128 a, u128 b, u128* out) {
    return !__builtin_mul_overflow(a, b, out);
}

// Per-shard partial sum: u128 fast path, spills into GMP on overflow.
class SumAccumulator {
public:
    void add(u128 term) {
        u128 next;
        if (__builtin_add_overflow(fast_, term, &next)) {
            spill_ += bigcount_from_u128(fast_);
            fast_ = term;
        } else {
            fast_ = next;
        }
    }
    void add(const BigCount& term) {
        if (sgn(term) < 0) throw invalid_input_error("counts cannot be negative");
        if (term.fits_ulong_p()) {
            add(static_cast<u128>(term.get_ui()));
        } else {
            spill_ += term;
        }
    }
    void add(const SumAccumulator& other) {
        spill_ += other.spill_;
        add(other.fast_);
    }
    BigCount total() const { return spill_ + bigcount_from_u128(fast_); }
    bool spilled() const { return spill_ != 0; }

private:
    u128 fast_ = 0;
    BigCount spill_ = 0;
};

} // namespace dedekind
