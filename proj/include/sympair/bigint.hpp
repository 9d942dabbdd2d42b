#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <string>
#include <vector>

namespace sympair {

// All codeword counts and closed-form values are exact integers; they
// overflow 64 bits long before the enumeration guard does (q^k up to 2^28,
// binomial sums far beyond). mpz_class everywhere, decimal strings at the
// serialization boundary.
using bigint = mpz_class;

// gmpxx has no long long overloads; this platform's long carries 64 bits.
static_assert(sizeof(long) >= 8, "64-bit long expected");

inline bigint to_bigint(long long v) { return bigint(static_cast<long>(v)); }

inline bigint bigint_pow(const bigint& base, unsigned long e) {
    bigint r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bigint bigint_pow(std::uint64_t base, unsigned long e) {
    bigint b;
    mpz_import(b.get_mpz_t(), 1, 1, sizeof(base), 0, 0, &base);
    return bigint_pow(b, e);
}

inline std::string to_decimal(const bigint& v) { return v.get_str(10); }

inline bigint from_decimal(const std::string& s) {
    return bigint(s, 10);
}

inline std::vector<std::string> to_decimal(const std::vector<bigint>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const bigint& x : v) out.push_back(to_decimal(x));
    return out;
}

} // namespace sympair
