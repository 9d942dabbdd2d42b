#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bigint.hpp"
#include "codes.hpp"
#include "error.hpp"
#include "field.hpp"
#include "metrics.hpp"

namespace sympair {

// Parameters (p, m) of the simplex families built from GF(p^m). The closed
// forms below are pure arithmetic in p and m, so they reach far past any
// field the library can materialize; bigint keeps them exact there.
struct SimplexParams {
    long long p = 0;
    int m = 0;

    void validate() const {
        if (p < 2 || !detail::is_prime_u64(static_cast<std::uint64_t>(p)))
            fail(errc::not_prime, "characteristic " + std::to_string(p) + " is not prime");
        if (m < 1) fail(errc::bad_degree, "extension degree must be at least 1");
    }

    bigint q() const { return bigint_pow(static_cast<std::uint64_t>(p), static_cast<unsigned long>(m)); }
    bigint h() const { return (q() - 1) / to_bigint(p - 1); } // the code length of the standard layout
};

namespace detail {

inline bigint p_power(const SimplexParams& P, long long e) {
    return bigint_pow(static_cast<std::uint64_t>(P.p), static_cast<unsigned long>(e));
}

inline void check_b(const SimplexParams& P, long long b, const bigint& length) {
    (void)P;
    if (b < 1 || to_bigint(b) > length)
        fail(errc::bad_window, "window width must satisfy 1 <= b <= code length");
}

} // namespace detail

// Every nonzero codeword of the cyclic layout has
//   w_b = q - p^(m-b)  for b < m,   w_b = q - 1  for b >= m.
inline bigint cyclic_simplex_b_weight(const SimplexParams& P, long long b) {
    P.validate();
    detail::check_b(P, b, P.q() - 1);
    if (b < P.m) return P.q() - detail::p_power(P, P.m - b);
    return P.q() - 1;
}

// Standard layout (length h): the cyclic value divided by p - 1.
inline bigint standard_simplex_b_weight(const SimplexParams& P, long long b) {
    P.validate();
    detail::check_b(P, b, P.h());
    if (b < P.m) return (P.q() - detail::p_power(P, P.m - b)) / to_bigint(P.p - 1);
    return P.h();
}

// Variation layout, pair windows (b = 2), m >= 2:
//   w_2 = q - p^(m-1) + p^(m-2).
inline bigint variation_simplex_pair_weight(const SimplexParams& P) {
    P.validate();
    if (P.m < 2) fail(errc::formula_unavailable, "pair weight of the variation layout needs m >= 2");
    return P.q() - detail::p_power(P, P.m - 1) + detail::p_power(P, P.m - 2);
}

// Variation layout over characteristic 3, odd windows b = 2s + 1:
//   w_b = q - 3^(m-s-1)  for s < m,   q - 1  for s >= m.
inline bigint variation_simplex_odd_b_weight(const SimplexParams& P, long long s) {
    P.validate();
    if (P.p != 3) fail(errc::formula_unavailable, "odd-window closed form holds for characteristic 3");
    if (s < 1) fail(errc::bad_window, "window parameter s must be at least 1");
    detail::check_b(P, 2 * s + 1, P.q() - 1);
    if (s < P.m) return P.q() - detail::p_power(P, P.m - s - 1);
    return P.q() - 1;
}

// Variation layout, windows of width p, p odd and m >= 2:
//   w_p = q - p^(m-2).
inline bigint variation_simplex_p_weight(const SimplexParams& P) {
    P.validate();
    if (P.p == 2) fail(errc::formula_unavailable, "width-p closed form holds for odd characteristic");
    if (P.m < 2) fail(errc::formula_unavailable, "width-p closed form needs m >= 2");
    return P.q() - detail::p_power(P, P.m - 2);
}

enum class SimplexFamily { cyclic, standard, variation };

inline std::string_view to_string(SimplexFamily f) {
    switch (f) {
    case SimplexFamily::cyclic: return "cyclic";
    case SimplexFamily::standard: return "standard";
    case SimplexFamily::variation: return "variation";
    }
    return "unknown";
}

inline SimplexFamily parse_simplex_family(std::string_view s) {
    if (s == "cyclic") return SimplexFamily::cyclic;
    if (s == "standard") return SimplexFamily::standard;
    if (s == "variation") return SimplexFamily::variation;
    fail(errc::parse_error, "unknown simplex family '" + std::string(s) + "'");
}

// Which closed form, if any, predicts w_b for the family. For p = 2 the
// variation layout is coordinate-identical to the cyclic one (h = q - 1),
// and for m = 1 every nonzero symbol appears, so both reduce to the cyclic
// value. The uncovered variation cases report as empirical.
inline std::optional<bigint> simplex_b_weight_formula(const SimplexParams& P, SimplexFamily fam, long long b,
                                                      std::string* source = nullptr) {
    auto tag = [&](std::string_view s) {
        if (source) *source = std::string(s);
    };
    switch (fam) {
    case SimplexFamily::cyclic:
        tag("cyclic");
        return cyclic_simplex_b_weight(P, b);
    case SimplexFamily::standard:
        tag("standard");
        return standard_simplex_b_weight(P, b);
    case SimplexFamily::variation:
        if (P.p == 2 || P.m == 1) {
            tag("cyclic_layout");
            return cyclic_simplex_b_weight(P, b);
        }
        if (b == 1) {
            tag("hamming");
            return cyclic_simplex_b_weight(P, 1);
        }
        if (b == 2) {
            tag("variation_pair");
            return variation_simplex_pair_weight(P);
        }
        if (P.p == 3 && b % 2 == 1) {
            tag("variation_odd");
            return variation_simplex_odd_b_weight(P, (b - 1) / 2);
        }
        if (b == P.p) {
            tag("variation_width_p");
            return variation_simplex_p_weight(P);
        }
        tag("");
        return std::nullopt;
    }
    return std::nullopt;
}

inline LinearCode make_simplex(const FieldPtr& construction, SimplexFamily fam) {
    switch (fam) {
    case SimplexFamily::cyclic: return cyclic_simplex(construction);
    case SimplexFamily::standard: return standard_simplex(construction);
    case SimplexFamily::variation: return variation_simplex(construction);
    }
    fail(errc::parse_error, "unknown simplex family");
}

struct SimplexCheck {
    int b = 0;
    std::optional<bigint> formula;        // absent: no closed form covers this b
    std::string formula_source;
    std::map<int, bigint> observed;       // w_b -> count over nonzero codewords
    bool one_weight = false;
    std::string verdict;                  // MATCH, MISMATCH or EMPIRICAL
};

struct SimplexReport {
    SimplexFamily family = SimplexFamily::cyclic;
    SimplexParams params;
    std::string field;
    int n = 0;
    int k = 0;
    std::vector<SimplexCheck> checks;
    bool all_match = true; // no MISMATCH entries (empirical rows do not fail)
};

// Enumerates the whole code once (q codewords), measures w_b for every b in
// [b_lo, b_hi], and compares each against the covering closed form. The
// closed forms predict one-weight codes, so MATCH means: a single observed
// weight, equal to the predicted one.
inline SimplexReport verify_simplex(const FieldPtr& construction, SimplexFamily fam, int b_lo, int b_hi,
                                    const EnumOptions& opts = {}) {
    const LinearCode code = make_simplex(construction, fam);
    const SimplexParams P{construction->characteristic(), construction->degree()};
    SimplexReport rep;
    rep.family = fam;
    rep.params = P;
    rep.field = construction->to_string();
    rep.n = code.length();
    rep.k = code.dimension();
    if (b_lo < 1 || b_hi > code.length() || b_lo > b_hi)
        fail(errc::bad_window, "window range must satisfy 1 <= b_lo <= b_hi <= n");
    code.message_count_checked(opts.guard);

    rep.checks.resize(static_cast<std::size_t>(b_hi - b_lo + 1));
    for (int b = b_lo; b <= b_hi; ++b) {
        SimplexCheck& c = rep.checks[static_cast<std::size_t>(b - b_lo)];
        c.b = b;
        c.formula = simplex_b_weight_formula(P, fam, b, &c.formula_source);
    }

    const std::uint64_t total = code.message_count_checked(opts.guard);
    for_each_codeword(code, {1, total}, [&](std::uint64_t, const Codeword& w) {
        const std::vector<int> wb = b_weights_up_to(w, b_hi);
        for (int b = b_lo; b <= b_hi; ++b)
            rep.checks[static_cast<std::size_t>(b - b_lo)].observed[wb[static_cast<std::size_t>(b)]] += 1;
    });

    for (SimplexCheck& c : rep.checks) {
        c.one_weight = c.observed.size() == 1;
        if (!c.formula) {
            c.verdict = "EMPIRICAL";
        } else if (c.one_weight && bigint(c.observed.begin()->first) == *c.formula) {
            c.verdict = "MATCH";
        } else {
            c.verdict = "MISMATCH";
            rep.all_match = false;
        }
    }
    return rep;
}

} // namespace sympair
