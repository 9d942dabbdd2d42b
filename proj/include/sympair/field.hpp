#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace sympair {

// An element of GF(p^m), identified by its canonical index: the coefficient
// vector (c_0, ..., c_{m-1}) of the residue class packs to sum c_i * p^i.
// Index 0 is zero, index 1 is one, indices below p are the prime subfield.
struct FieldElement {
    std::uint32_t idx = 0;
    friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

namespace detail {

inline bool is_prime_u64(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

// Little-endian coefficient vectors over GF(p), trailing zeros trimmed.
inline void poly_trim(std::vector<int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<int>((r[i + j] + static_cast<long long>(a[i]) * b[j]) % p);
    poly_trim(r);
    return r;
}

// Remainder of a by monic b.
inline std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
    poly_trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const int lead = a.back();
        if (lead != 0) {
            const std::size_t shift = a.size() - 1 - db;
            for (std::size_t i = 0; i < db; ++i) {
                long long v = a[shift + i] - static_cast<long long>(lead) * b[i];
                a[shift + i] = static_cast<int>(((v % p) + p) % p);
            }
        }
        a.pop_back();
        poly_trim(a);
    }
    return a;
}

inline bool poly_is_zero(const std::vector<int>& a) { return a.empty(); }

// Trial division by every monic polynomial of degree 1..deg(f)/2.
inline bool poly_irreducible(const std::vector<int>& f, int p) {
    const std::size_t deg = f.size() - 1;
    if (deg == 0) return false;
    if (deg == 1) return true;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p);
        for (std::uint64_t t = 0; t < count; ++t) {
            std::vector<int> g(d + 1, 0);
            std::uint64_t v = t;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<int>(v % p);
                v /= p;
            }
            g[d] = 1;
            if (poly_is_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

inline std::vector<std::uint32_t> prime_factors(std::uint32_t v) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            while (v % d == 0) v /= d;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

} // namespace detail

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// GF(p^m) = GF(p)[x] / (modulus), q = p^m <= 2^20. Elements are canonical
// indices; arithmetic runs on exp/log tables built from the stored primitive
// element g (smallest primitive element in canonical index order).
class Field {
public:
    static constexpr std::uint32_t max_size = 1u << 20;

    Field(int p, int m, std::vector<int> modulus) { init(p, m, std::move(modulus)); }

    int characteristic() const { return p_; }
    int degree() const { return m_; }
    std::uint32_t size() const { return q_; }
    const std::vector<int>& modulus() const { return mod_; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }
    FieldElement generator() const { return {g_}; }

    bool is_zero(FieldElement a) const { return a.idx == 0; }

    FieldElement from_index(std::uint32_t idx) const {
        if (idx >= q_) fail(errc::bad_element, "index " + std::to_string(idx) + " out of range for field of size " + std::to_string(q_));
        return {idx};
    }

    // Coefficients may be any integers (reduced mod p) and the vector may be
    // shorter than m (implicit zeros); longer vectors are rejected.
    FieldElement element(const std::vector<int>& coeffs) const {
        if (coeffs.size() > static_cast<std::size_t>(m_))
            fail(errc::bad_element, "coefficient vector longer than field degree");
        std::uint32_t idx = 0, pw = 1;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            int c = ((coeffs[i] % p_) + p_) % p_;
            idx += static_cast<std::uint32_t>(c) * pw;
            pw *= static_cast<std::uint32_t>(p_);
        }
        return {idx};
    }

    std::vector<int> coeffs(FieldElement a) const {
        check(a);
        std::vector<int> out(m_);
        std::uint32_t v = a.idx;
        for (int i = 0; i < m_; ++i) {
            out[i] = static_cast<int>(v % static_cast<std::uint32_t>(p_));
            v /= static_cast<std::uint32_t>(p_);
        }
        return out;
    }

    FieldElement add(FieldElement a, FieldElement b) const {
        check(a); check(b);
        return {add_idx(a.idx, b.idx)};
    }

    FieldElement sub(FieldElement a, FieldElement b) const {
        check(a); check(b);
        return {add_idx(a.idx, neg_idx(b.idx))};
    }

    FieldElement neg(FieldElement a) const {
        check(a);
        return {neg_idx(a.idx)};
    }

    FieldElement mul(FieldElement a, FieldElement b) const {
        check(a); check(b);
        return {mul_idx(a.idx, b.idx)};
    }

    FieldElement inv(FieldElement a) const {
        check(a);
        if (a.idx == 0) fail(errc::division_by_zero, "inverse of zero");
        return {exp_[(nz_ - log_[a.idx]) % nz_]};
    }

    FieldElement div(FieldElement a, FieldElement b) const {
        check(a); check(b);
        if (b.idx == 0) fail(errc::division_by_zero, "division by zero");
        if (a.idx == 0) return {0};
        return {exp_[(log_[a.idx] + nz_ - log_[b.idx]) % nz_]};
    }

    FieldElement pow(FieldElement a, long long e) const {
        check(a);
        if (a.idx == 0) {
            if (e == 0) return one();
            if (e < 0) fail(errc::division_by_zero, "negative power of zero");
            return zero();
        }
        long long r = e % static_cast<long long>(nz_);
        if (r < 0) r += nz_;
        std::uint64_t t = static_cast<std::uint64_t>(log_[a.idx]) * static_cast<std::uint64_t>(r) % nz_;
        return {exp_[t]};
    }

    // g^i for any i >= 0.
    FieldElement exp(std::uint64_t i) const { return {exp_[i % nz_]}; }

    std::uint32_t dlog(FieldElement a) const {
        check(a);
        if (a.idx == 0) fail(errc::dlog_of_zero, "discrete log of zero");
        return log_[a.idx];
    }

    // Absolute trace Tr(a) = a + a^p + ... + a^(p^(m-1)), always in GF(p);
    // returned as the integer 0..p-1 (equal to its canonical index).
    int trace(FieldElement a) const {
        check(a);
        return trace_[a.idx];
    }

    FieldElement trace_element(FieldElement a) const { return {static_cast<std::uint32_t>(trace(a))}; }

    // Raw-index arithmetic for inner loops; no range checks.
    std::uint32_t add_idx(std::uint32_t a, std::uint32_t b) const {
        if (!add_.empty()) return add_[static_cast<std::size_t>(a) * q_ + b];
        return add_slow(a, b);
    }

    std::uint32_t neg_idx(std::uint32_t a) const {
        if (!neg_tab_.empty()) return neg_tab_[a];
        return neg_slow(a);
    }

    std::uint32_t mul_idx(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % nz_];
    }

    // "GF(p^m; c0,...,cm; g=e0,...,e{m-1})"
    std::string to_string() const {
        std::ostringstream os;
        os << "GF(" << p_ << '^' << m_ << "; ";
        for (int i = 0; i <= m_; ++i) os << mod_[i] << (i == m_ ? "" : ",");
        os << "; g=" << element_string(generator()) << ")";
        return os.str();
    }

    std::string element_string(FieldElement a) const {
        const std::vector<int> c = coeffs(a);
        std::ostringstream os;
        for (int i = 0; i < m_; ++i) os << c[i] << (i + 1 == m_ ? "" : ",");
        return os.str();
    }

    FieldElement parse_element(std::string_view s) const {
        std::vector<int> c;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t next = s.find(',', pos);
            std::string_view tok = s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(std::string(tok), &used);
            } catch (const std::exception&) {
                fail(errc::parse_error, "bad element coefficient '" + std::string(tok) + "'");
            }
            while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
            if (used != tok.size()) fail(errc::parse_error, "bad element coefficient '" + std::string(tok) + "'");
            c.push_back(v);
            if (next == std::string_view::npos) break;
            pos = next + 1;
        }
        return element(c);
    }

private:
    void check(FieldElement a) const {
        if (a.idx >= q_) fail(errc::bad_element, "element index out of range");
    }

    std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t r = 0, pw = 1;
        const std::uint32_t p = static_cast<std::uint32_t>(p_);
        while (a != 0 || b != 0) {
            std::uint32_t d = (a % p + b % p) % p;
            r += d * pw;
            pw *= p;
            a /= p;
            b /= p;
        }
        return r;
    }

    std::uint32_t neg_slow(std::uint32_t a) const {
        std::uint32_t r = 0, pw = 1;
        const std::uint32_t p = static_cast<std::uint32_t>(p_);
        while (a != 0) {
            std::uint32_t d = a % p;
            r += (d == 0 ? 0 : p - d) * pw;
            pw *= p;
            a /= p;
        }
        return r;
    }

    std::uint32_t pack(const std::vector<int>& poly) const {
        std::uint32_t idx = 0, pw = 1;
        for (int c : poly) {
            idx += static_cast<std::uint32_t>(c) * pw;
            pw *= static_cast<std::uint32_t>(p_);
        }
        return idx;
    }

    std::vector<int> unpack(std::uint32_t idx) const {
        std::vector<int> out;
        while (idx != 0) {
            out.push_back(static_cast<int>(idx % static_cast<std::uint32_t>(p_)));
            idx /= static_cast<std::uint32_t>(p_);
        }
        return out;
    }

    std::uint32_t mul_raw(std::uint32_t a, std::uint32_t b) const {
        return pack(detail::poly_mod(detail::poly_mul(unpack(a), unpack(b), p_), mod_, p_));
    }

    std::uint32_t pow_raw(std::uint32_t a, std::uint32_t e) const {
        std::uint32_t r = 1;
        while (e != 0) {
            if (e & 1u) r = mul_raw(r, a);
            a = mul_raw(a, a);
            e >>= 1;
        }
        return r;
    }

    void init(int p, int m, std::vector<int> modulus) {
        if (p < 2 || !detail::is_prime_u64(static_cast<std::uint64_t>(p)))
            fail(errc::not_prime, "characteristic " + std::to_string(p) + " is not prime");
        if (m < 1) fail(errc::bad_degree, "extension degree must be at least 1");
        std::uint64_t q = 1;
        for (int i = 0; i < m; ++i) {
            q *= static_cast<std::uint64_t>(p);
            if (q > max_size) fail(errc::field_too_large, "field size exceeds 2^20");
        }
        p_ = p;
        m_ = m;
        q_ = static_cast<std::uint32_t>(q);
        nz_ = q_ - 1;

        if (modulus.size() != static_cast<std::size_t>(m) + 1)
            fail(errc::bad_degree, "modulus must have exactly degree " + std::to_string(m));
        for (int& c : modulus) c = ((c % p) + p) % p;
        if (modulus.back() != 1) fail(errc::not_monic, "modulus is not monic");
        if (!detail::poly_irreducible(modulus, p))
            fail(errc::reducible_modulus, "modulus is reducible");
        mod_ = std::move(modulus);

        // Smallest primitive element in canonical index order.
        const std::vector<std::uint32_t> factors = detail::prime_factors(nz_);
        g_ = 0;
        for (std::uint32_t cand = 1; cand < q_; ++cand) {
            bool primitive = true;
            for (std::uint32_t r : factors) {
                if (pow_raw(cand, nz_ / r) == 1) { primitive = false; break; }
            }
            if (primitive) { g_ = cand; break; }
        }
        // nz_ == 0 only for q = 1, excluded above; a generator always exists.

        exp_.assign(nz_, 0);
        log_.assign(q_, 0);
        std::uint32_t acc = 1;
        for (std::uint32_t i = 0; i < nz_; ++i) {
            exp_[i] = acc;
            log_[acc] = i;
            acc = mul_raw(acc, g_);
        }

        if (q_ <= 1024) {
            add_.assign(static_cast<std::size_t>(q_) * q_, 0);
            for (std::uint32_t a = 0; a < q_; ++a)
                for (std::uint32_t b = a; b < q_; ++b) {
                    std::uint32_t s = add_slow(a, b);
                    add_[static_cast<std::size_t>(a) * q_ + b] = s;
                    add_[static_cast<std::size_t>(b) * q_ + a] = s;
                }
        }
        neg_tab_.assign(q_, 0);
        for (std::uint32_t a = 0; a < q_; ++a) neg_tab_[a] = neg_slow(a);

        trace_.assign(q_, 0);
        for (std::uint32_t a = 1; a < q_; ++a) {
            std::uint32_t t = 0;
            std::uint64_t e = log_[a];
            for (int i = 0; i < m_; ++i) {
                t = add_idx(t, exp_[e % nz_]);
                e = e * static_cast<std::uint64_t>(p_) % nz_;
            }
            // The trace lands in the prime subfield, i.e. a constant index.
            trace_[a] = static_cast<int>(t);
        }
    }

    int p_ = 0;
    int m_ = 0;
    std::uint32_t q_ = 0;
    std::uint32_t nz_ = 0;
    std::uint32_t g_ = 0;
    std::vector<int> mod_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> add_;
    std::vector<std::uint32_t> neg_tab_;
    std::vector<int> trace_;
};

// Lexicographically smallest monic irreducible, little-endian coefficients
// (c_0 compared first).
inline std::vector<int> auto_modulus(int p, int m) {
    if (p < 2 || !detail::is_prime_u64(static_cast<std::uint64_t>(p)))
        fail(errc::not_prime, "characteristic " + std::to_string(p) + " is not prime");
    if (m < 1) fail(errc::bad_degree, "extension degree must be at least 1");
    std::uint64_t count = 1;
    for (int i = 0; i < m; ++i) {
        count *= static_cast<std::uint64_t>(p);
        if (count > Field::max_size) fail(errc::field_too_large, "field size exceeds 2^20");
    }
    for (std::uint64_t t = 0; t < count; ++t) {
        std::vector<int> f(static_cast<std::size_t>(m) + 1, 0);
        std::uint64_t v = t;
        for (int i = m - 1; i >= 0; --i) {
            f[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::uint64_t>(p));
            v /= static_cast<std::uint64_t>(p);
        }
        f[static_cast<std::size_t>(m)] = 1;
        if (detail::poly_irreducible(f, p)) return f;
    }
    fail(errc::reducible_modulus, "no irreducible modulus found"); // unreachable
}

inline FieldPtr make_field(int p, int m, std::vector<int> modulus) {
    return std::make_shared<Field>(p, m, std::move(modulus));
}

inline FieldPtr make_field(int p, int m) {
    return std::make_shared<Field>(p, m, auto_modulus(p, m));
}

// Parses the exact shape emitted by Field::to_string; the g=... part is
// optional and, when present, must match the field's own generator choice.
inline FieldPtr parse_field(std::string_view s) {
    auto bad = [&]() { fail(errc::parse_error, "bad field literal '" + std::string(s) + "'"); };
    auto skip_ws = [&](std::size_t& i) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    std::size_t i = 0;
    skip_ws(i);
    if (s.substr(i, 3) != "GF(") bad();
    i += 3;
    auto read_int = [&](std::size_t& j) {
        skip_ws(j);
        std::size_t start = j;
        if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == start) bad();
        return std::stoi(std::string(s.substr(start, j - start)));
    };
    int p = read_int(i);
    skip_ws(i);
    int m = 1;
    if (i < s.size() && s[i] == '^') {
        ++i;
        m = read_int(i);
        skip_ws(i);
    }
    if (i >= s.size() || s[i] != ';') bad();
    ++i;
    std::vector<int> mod;
    for (int k = 0; k <= m; ++k) {
        mod.push_back(read_int(i));
        skip_ws(i);
        if (k < m) {
            if (i >= s.size() || s[i] != ',') bad();
            ++i;
        }
    }
    skip_ws(i);
    std::string gen;
    if (i < s.size() && s[i] == ';') {
        ++i;
        skip_ws(i);
        if (s.substr(i, 2) != "g=") bad();
        i += 2;
        std::size_t start = i;
        while (i < s.size() && s[i] != ')') ++i;
        gen = std::string(s.substr(start, i - start));
    }
    if (i >= s.size() || s[i] != ')') bad();
    ++i;
    skip_ws(i);
    if (i != s.size()) bad();
    FieldPtr f = make_field(p, m, std::move(mod));
    if (!gen.empty() && f->parse_element(gen) != f->generator())
        fail(errc::parse_error, "field literal names a generator that is not the canonical one");
    return f;
}

} // namespace sympair
