#pragma once

// Test support: reference implementations kept deliberately naive so the
// optimized library paths have something independent to be checked against,
// plus exact rational interpolation and a fixed-seed RNG.

#include <cstdint>
#include <random>
#include <vector>

#include <gmpxx.h>

#include <sympair/bigint.hpp>
#include <sympair/codes.hpp>
#include <sympair/field.hpp>

namespace oracle {

using sympair::bigint;
using sympair::Codeword;
using sympair::Field;
using sympair::FieldElement;
using sympair::LinearCode;

// Number of cyclic width-b windows with a nonzero entry, straight from the
// definition; quadratic and proud of it.
inline int naive_b_weight(const Codeword& x, int b) {
    const int n = static_cast<int>(x.size());
    int w = 0;
    for (int i = 0; i < n; ++i) {
        bool nonzero = false;
        for (int t = 0; t < b; ++t) nonzero = nonzero || x[static_cast<std::size_t>((i + t) % n)].idx != 0;
        w += nonzero ? 1 : 0;
    }
    return w;
}

// Full q^k histogram via codeword_at, bypassing the enumeration engine.
inline std::vector<bigint> naive_distribution(const LinearCode& code, int b) {
    std::vector<bigint> counts(static_cast<std::size_t>(code.length()) + 1, 0);
    const std::uint64_t total = code.message_count_checked();
    for (std::uint64_t i = 0; i < total; ++i)
        ++counts[static_cast<std::size_t>(naive_b_weight(code.codeword_at(i), b))];
    return counts;
}

// Exact Lagrange interpolation through (xs[i], ys[i]). Returns coefficients
// with the constant term first; throws if any coefficient is not an integer.
inline std::vector<bigint> interpolate_integer_polynomial(const std::vector<long>& xs,
                                                          const std::vector<bigint>& ys) {
    const std::size_t n = xs.size();
    std::vector<mpq_class> acc(n, mpq_class(0));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<mpq_class> basis{mpq_class(1)};
        mpq_class den(1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::vector<mpq_class> next(basis.size() + 1, mpq_class(0));
            for (std::size_t t = 0; t < basis.size(); ++t) {
                next[t + 1] += basis[t];
                next[t] -= xs[j] * basis[t];
            }
            basis = std::move(next);
            den *= xs[i] - xs[j];
        }
        const mpq_class scale = mpq_class(ys[i]) / den;
        for (std::size_t t = 0; t < basis.size(); ++t) acc[t] += scale * basis[t];
    }
    std::vector<bigint> out;
    out.reserve(n);
    for (mpq_class& c : acc) {
        c.canonicalize();
        if (c.get_den() != 1) throw std::runtime_error("interpolation produced a non-integer coefficient");
        out.push_back(c.get_num());
    }
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
}

inline bigint eval_polynomial(const std::vector<bigint>& coeffs, long x) {
    bigint v = 0;
    for (std::size_t t = coeffs.size(); t-- > 0;) v = v * x + coeffs[t];
    return v;
}

// Every test draws from the same seed so failures replay exactly.
inline std::mt19937_64 seeded_rng(std::uint64_t salt = 0) {
    return std::mt19937_64(0x5eedbea7u + salt);
}

inline Codeword random_word(const Field& F, int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, F.size() - 1);
    Codeword x(static_cast<std::size_t>(n), F.zero());
    for (FieldElement& e : x) e = F.from_index(pick(rng));
    return x;
}

} // namespace oracle
