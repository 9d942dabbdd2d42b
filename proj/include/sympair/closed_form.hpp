#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bigint.hpp"
#include "codes.hpp"
#include "error.hpp"
#include "metrics.hpp"

namespace sympair {

// C(a, b), zero outside the triangle (a < 0, b < 0 or b > a).
inline bigint binom(long long a, long long b) {
    if (a < 0 || b < 0 || b > a) return 0;
    bigint r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    return r;
}

// Parameters of an MDS [n, k] code over an alphabet of size q; the minimum
// distance is forced to n - k + 1. q only enters the formulas as a size, so
// it is not restricted to prime powers here.
struct MdsParams {
    int n = 0;
    int k = 0;
    std::uint64_t q = 0;

    int d() const { return n - k + 1; }

    void validate() const {
        if (n < 1) fail(errc::bad_length, "length must be at least 1");
        if (k < 1 || k > n) fail(errc::bad_dimension, "dimension must satisfy 1 <= k <= n");
        if (q < 2) fail(errc::bad_element, "alphabet size must be at least 2");
    }
};

// Hamming weight counts of an MDS code:
//   A_0 = 1, A_i = 0 below d,
//   A_i = C(n,i) * sum_{j=0}^{i-d} (-1)^j C(i,j) (q^(i+1-d-j) - 1) otherwise.
inline WeightDistribution mds_hamming_distribution(const MdsParams& P) {
    P.validate();
    const int d = P.d();
    WeightDistribution dist;
    dist.b = 1;
    dist.n = P.n;
    dist.source = Source::formula;
    dist.counts.assign(static_cast<std::size_t>(P.n) + 1, 0);
    dist.counts[0] = 1;
    for (int i = d; i <= P.n; ++i) {
        bigint s = 0;
        for (int j = 0; j <= i - d; ++j) {
            const bigint term = binom(i, j) * (bigint_pow(P.q, static_cast<unsigned long>(i + 1 - d - j)) - 1);
            if (j % 2 == 0) s += term; else s -= term;
        }
        dist.counts[static_cast<std::size_t>(i)] = binom(P.n, i) * s;
    }
    return dist;
}

namespace detail {

// The three double sums share their inner factor; only the pair of leading
// binomials and the range of i differ.
inline bigint pair_sum(const MdsParams& P, int w, int i_max, long long top_shift, long long bottom_shift) {
    const int d = P.d();
    bigint total = 0;
    for (int i = 1; i <= i_max; ++i) {
        const bigint lead = binom(P.n - w + i - 1, i - 1 + top_shift) * binom(w - i - 1, i - 1 + bottom_shift);
        if (lead == 0) continue;
        bigint inner = 0;
        for (int j = 0; j <= w - i - d; ++j) {
            const bigint term =
                binom(w - i, j) * (bigint_pow(P.q, static_cast<unsigned long>(w - i + 1 - d - j)) - 1);
            if (j % 2 == 0) inner += term; else inner -= term;
        }
        total += lead * inner;
    }
    return total;
}

} // namespace detail

// Pair weight counts of an MDS code. For d < w < n,
//   B_w = 2*S1 + S2 + S3,
// with S1, S2, S3 the alternating double sums over i <= min(floor(w/2), w-d)
// (S1, S2) resp. i <= min(floor((w-1)/2), w-d) (S3). The top weight trades
// S2 for the full-support Hamming count:
//   B_n = 2*S1 + S3 + A_n,
// and that branch wins over the "zero below d" branch, which matters when
// d = n (k = 1): the sums collapse and B_n = A_n = q - 1.
inline WeightDistribution mds_pair_distribution(const MdsParams& P) {
    P.validate();
    const int d = P.d();
    WeightDistribution dist;
    dist.b = 2;
    dist.n = P.n;
    dist.source = Source::formula;
    dist.counts.assign(static_cast<std::size_t>(P.n) + 1, 0);
    dist.counts[0] = 1;
    for (int w = d + 1; w < P.n; ++w) {
        const int m1 = std::min(w / 2, w - d);
        const int m2 = std::min((w - 1) / 2, w - d);
        const bigint s1 = detail::pair_sum(P, w, m1, 0, 0);
        const bigint s2 = detail::pair_sum(P, w, m1, 1, 0);
        const bigint s3 = detail::pair_sum(P, w, m2, 0, 1);
        dist.counts[static_cast<std::size_t>(w)] = 2 * s1 + s2 + s3;
    }
    if (P.n >= 1) {
        const int w = P.n;
        const int m1 = std::min(w / 2, w - d);
        const int m2 = std::min((w - 1) / 2, w - d);
        const bigint s1 = detail::pair_sum(P, w, m1, 0, 0);
        const bigint s3 = detail::pair_sum(P, w, m2, 0, 1);
        const WeightDistribution ham = mds_hamming_distribution(P);
        dist.counts[static_cast<std::size_t>(w)] = 2 * s1 + s3 + ham.counts[static_cast<std::size_t>(w)];
    }
    return dist;
}

inline MdsParams mds_params_of(const LinearCode& code) {
    if (!code.mds_by_construction())
        fail(errc::formula_unavailable,
             "closed-form distributions require an MDS-by-construction code, got " + code.describe());
    return MdsParams{code.length(), code.dimension(), code.field().size()};
}

// Closed form versus exhaustive enumeration for one code.
struct TheoremReport {
    std::string code;
    MdsParams params;
    WeightDistribution formula;
    WeightDistribution brute;
    std::vector<int> mismatches; // weights where the two disagree
    bool match = false;
};

inline TheoremReport verify_mds_pair_distribution(const LinearCode& code, const EnumOptions& opts = {}) {
    TheoremReport rep;
    rep.code = code.describe();
    rep.params = mds_params_of(code);
    rep.formula = mds_pair_distribution(rep.params);
    rep.brute = b_weight_distribution(code, 2, opts);
    for (int w = 0; w <= code.length(); ++w)
        if (rep.formula.counts[static_cast<std::size_t>(w)] != rep.brute.counts[static_cast<std::size_t>(w)])
            rep.mismatches.push_back(w);
    rep.match = rep.mismatches.empty();
    return rep;
}

// d_2 <= n - k + 2 for every [n, k] code with k >= 2 (and the MDS family
// meets it with equality).
struct PairSingletonReport {
    int n = 0;
    int k = 0;
    int d2 = 0;
    int bound = 0;
    bool meets_bound = false; // d2 == n - k + 2
    bool within_bound = false;
};

inline PairSingletonReport pair_singleton_check(const LinearCode& code, const EnumOptions& opts = {}) {
    PairSingletonReport rep;
    rep.n = code.length();
    rep.k = code.dimension();
    rep.d2 = min_b_distance(code, 2, opts); // length 1 is rejected by the window check
    rep.bound = rep.n - rep.k + 2;
    rep.meets_bound = rep.d2 == rep.bound;
    rep.within_bound = rep.d2 <= rep.bound;
    return rep;
}

} // namespace sympair
