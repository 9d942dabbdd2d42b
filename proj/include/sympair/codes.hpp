#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"
#include "field.hpp"

namespace sympair {

using Codeword = std::vector<FieldElement>;

enum class CodeKind { rs, cyclic_simplex, standard_simplex, variation_simplex, shortened, raw };

inline std::string_view to_string(CodeKind k) {
    switch (k) {
    case CodeKind::rs: return "rs";
    case CodeKind::cyclic_simplex: return "cyclic_simplex";
    case CodeKind::standard_simplex: return "standard_simplex";
    case CodeKind::variation_simplex: return "variation_simplex";
    case CodeKind::shortened: return "shortened";
    case CodeKind::raw: return "raw";
    }
    return "unknown";
}

// Enumeration sizes: q^k above the guard is refused outright. The default is
// deliberately conservative. The library ceiling admits overnight-scale jobs
// (2^33 messages is minutes of single-core work); the CLI pins its own
// tighter override cap.
inline constexpr std::uint64_t default_enumeration_guard = 1ull << 24;
inline constexpr std::uint64_t max_enumeration_guard = 1ull << 33;
inline constexpr std::uint64_t cli_guard_cap = 1ull << 28;

namespace detail {

// Row-reduce M (rows x cols, row-major) in place; returns the pivot columns.
inline std::vector<int> rref(const Field& F, std::vector<FieldElement>& M, int rows, int cols) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (!F.is_zero(M[static_cast<std::size_t>(i) * cols + c])) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < cols; ++j)
                std::swap(M[static_cast<std::size_t>(pr) * cols + j], M[static_cast<std::size_t>(r) * cols + j]);
        const FieldElement inv = F.inv(M[static_cast<std::size_t>(r) * cols + c]);
        for (int j = 0; j < cols; ++j)
            M[static_cast<std::size_t>(r) * cols + j] = F.mul(M[static_cast<std::size_t>(r) * cols + j], inv);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            const FieldElement f = M[static_cast<std::size_t>(i) * cols + c];
            if (F.is_zero(f)) continue;
            for (int j = 0; j < cols; ++j) {
                const FieldElement t = F.mul(f, M[static_cast<std::size_t>(r) * cols + j]);
                M[static_cast<std::size_t>(i) * cols + j] = F.sub(M[static_cast<std::size_t>(i) * cols + j], t);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int matrix_rank(const Field& F, std::vector<FieldElement> M, int rows, int cols) {
    return static_cast<int>(rref(F, M, rows, cols).size());
}

} // namespace detail

// A linear [n, k] code over its alphabet field, held as a full-rank k x n
// generator matrix. Messages are vectors in F^k; the codeword of a message
// is the message times the generator matrix.
class LinearCode {
public:
    LinearCode(CodeKind kind, FieldPtr field, int n, int k, std::vector<FieldElement> gen)
        : kind_(kind), field_(std::move(field)), n_(n), k_(k), gen_(std::move(gen)) {
        if (n_ < 1) fail(errc::bad_length, "code length must be at least 1");
        if (k_ < 1 || k_ > n_) fail(errc::bad_dimension, "dimension must satisfy 1 <= k <= n");
        if (gen_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(k_))
            fail(errc::length_mismatch, "generator matrix has wrong shape");
        if (detail::matrix_rank(*field_, gen_, k_, n_) != k_)
            fail(errc::bad_dimension, "generator matrix rows are dependent");
    }

    CodeKind kind() const { return kind_; }
    const Field& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    int length() const { return n_; }
    int dimension() const { return k_; }

    FieldElement generator_at(int row, int col) const {
        return gen_[static_cast<std::size_t>(row) * n_ + col];
    }
    const std::vector<FieldElement>& generator() const { return gen_; }

    // Metadata, populated by the matching constructors.
    const std::vector<FieldElement>& points() const { return points_; }
    const FieldPtr& construction_field() const { return construction_field_; }
    const std::vector<int>& shortened_at() const { return shorten_T_; }
    bool mds_by_construction() const { return mds_; }

    bigint message_count() const {
        return bigint_pow(static_cast<std::uint64_t>(field_->size()), static_cast<unsigned long>(k_));
    }

    // q^k when it fits the guard, otherwise refuses.
    std::uint64_t message_count_checked(std::uint64_t guard = default_enumeration_guard) const {
        if (guard > max_enumeration_guard) guard = max_enumeration_guard;
        unsigned __int128 total = 1;
        for (int i = 0; i < k_; ++i) {
            total *= field_->size();
            if (total > guard)
                fail(errc::enumeration_too_large,
                     "q^k = " + to_decimal(message_count()) + " exceeds the enumeration guard " + std::to_string(guard));
        }
        return static_cast<std::uint64_t>(total);
    }

    Codeword codeword(const std::vector<FieldElement>& message) const {
        if (message.size() != static_cast<std::size_t>(k_))
            fail(errc::length_mismatch, "message length must equal the dimension");
        const Field& F = *field_;
        Codeword w(static_cast<std::size_t>(n_), F.zero());
        for (int d = 0; d < k_; ++d) {
            if (F.is_zero(message[static_cast<std::size_t>(d)])) continue;
            for (int j = 0; j < n_; ++j)
                w[static_cast<std::size_t>(j)] =
                    F.add(w[static_cast<std::size_t>(j)], F.mul(message[static_cast<std::size_t>(d)], generator_at(d, j)));
        }
        return w;
    }

    // Message order is lexicographic with coordinate 0 most significant.
    std::vector<FieldElement> message_at(std::uint64_t index) const {
        const std::uint64_t q = field_->size();
        std::vector<FieldElement> msg(static_cast<std::size_t>(k_), field_->zero());
        for (int d = k_ - 1; d >= 0; --d) {
            msg[static_cast<std::size_t>(d)] = field_->from_index(static_cast<std::uint32_t>(index % q));
            index /= q;
        }
        if (index != 0) fail(errc::bad_element, "message index out of range");
        return msg;
    }

    Codeword codeword_at(std::uint64_t index) const { return codeword(message_at(index)); }

    std::string describe() const {
        std::ostringstream os;
        os << to_string(kind_) << "[n=" << n_ << ",k=" << k_ << "] over " << field_->to_string();
        if (construction_field_) os << " built from " << construction_field_->to_string();
        if (!shorten_T_.empty()) {
            os << " shortened at {";
            for (std::size_t i = 0; i < shorten_T_.size(); ++i)
                os << shorten_T_[i] << (i + 1 == shorten_T_.size() ? "" : ",");
            os << "}";
        }
        return os.str();
    }

private:
    friend LinearCode rs_code(FieldPtr, std::vector<FieldElement>, int);
    friend LinearCode cyclic_simplex(const FieldPtr&);
    friend LinearCode standard_simplex(const FieldPtr&);
    friend LinearCode variation_simplex(const FieldPtr&);
    friend LinearCode shorten(const LinearCode&, std::vector<int>);

    CodeKind kind_;
    FieldPtr field_;
    int n_;
    int k_;
    std::vector<FieldElement> gen_;
    std::vector<FieldElement> points_;
    FieldPtr construction_field_;
    std::vector<int> shorten_T_;
    bool mds_ = false;
};

// Evaluation code of polynomials of degree < k at distinct points: generator
// row i is (a_0^i, ..., a_{n-1}^i). MDS with d = n - k + 1.
inline LinearCode rs_code(FieldPtr field, std::vector<FieldElement> points, int k) {
    const Field& F = *field;
    const int n = static_cast<int>(points.size());
    if (n < 1) fail(errc::bad_length, "evaluation point list is empty");
    {
        std::vector<FieldElement> sorted = points;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            fail(errc::duplicate_points, "evaluation points must be distinct");
    }
    if (k < 1 || k > n) fail(errc::bad_dimension, "dimension must satisfy 1 <= k <= n");
    std::vector<FieldElement> gen(static_cast<std::size_t>(k) * n, F.zero());
    for (int j = 0; j < n; ++j) {
        FieldElement v = F.one();
        for (int i = 0; i < k; ++i) {
            gen[static_cast<std::size_t>(i) * n + j] = v;
            v = F.mul(v, points[static_cast<std::size_t>(j)]);
        }
    }
    LinearCode code(CodeKind::rs, std::move(field), n, k, std::move(gen));
    code.points_ = std::move(points);
    code.mds_ = true;
    return code;
}

// The first n powers g^0, ..., g^(n-1) of the canonical generator.
inline std::vector<FieldElement> consecutive_powers(const Field& F, int n) {
    std::vector<FieldElement> pts;
    pts.reserve(static_cast<std::size_t>(std::max(n, 0)));
    for (int i = 0; i < n; ++i) pts.push_back(F.exp(static_cast<std::uint64_t>(i)));
    return pts;
}

namespace detail {

inline FieldPtr prime_subfield(const Field& F) {
    return make_field(F.characteristic(), 1);
}

// k = m rows; row r, column j holds Tr(g^(e(j)) * x^r) as an element of
// GF(p). The exponent map e distinguishes the three simplex layouts.
template <class ExpMap>
LinearCode trace_code(CodeKind kind, const FieldPtr& construction, int n, ExpMap&& exponent) {
    const Field& E = *construction;
    FieldPtr base = prime_subfield(E);
    const int m = E.degree();
    std::vector<FieldElement> gen(static_cast<std::size_t>(m) * n);
    for (int r = 0; r < m; ++r) {
        std::uint64_t pr = 1;
        for (int i = 0; i < r; ++i) pr *= static_cast<std::uint64_t>(E.characteristic());
        const FieldElement xr = E.from_index(static_cast<std::uint32_t>(pr));
        for (int j = 0; j < n; ++j) {
            const FieldElement v = E.mul(E.exp(exponent(j)), xr);
            gen[static_cast<std::size_t>(r) * n + j] =
                base->from_index(static_cast<std::uint32_t>(E.trace(v)));
        }
    }
    return LinearCode(kind, std::move(base), n, m, std::move(gen));
}

} // namespace detail

// Length q - 1, coordinates c_alpha[i] = Tr(g^i * alpha). The code is linear
// over GF(p) with dimension m; every nonzero codeword is a cyclic shift of
// the first one.
inline LinearCode cyclic_simplex(const FieldPtr& construction) {
    const std::uint32_t q = construction->size();
    if (q < 2 + 1u) fail(errc::bad_length, "construction field must have at least 3 elements");
    LinearCode code = detail::trace_code(CodeKind::cyclic_simplex, construction, static_cast<int>(q - 1),
                                         [](int j) { return static_cast<std::uint64_t>(j); });
    code.construction_field_ = construction;
    return code;
}

// One coordinate per 1-dimensional subspace: length h = (q-1)/(p-1), the
// first h coordinates of the cyclic layout.
inline LinearCode standard_simplex(const FieldPtr& construction) {
    const std::uint32_t q = construction->size();
    const std::uint32_t p = static_cast<std::uint32_t>(construction->characteristic());
    const std::uint32_t h = (q - 1) / (p - 1);
    if (h < 1) fail(errc::bad_length, "standard simplex layout is empty");
    LinearCode code = detail::trace_code(CodeKind::standard_simplex, construction, static_cast<int>(h),
                                         [](int j) { return static_cast<std::uint64_t>(j); });
    code.construction_field_ = construction;
    return code;
}

// Length q - 1, coordinate t = i*(p-1) + j (0 <= i < h, 0 <= j < p-1) holds
// Tr(g^(i + j*h) * alpha): the standard layout followed by its nonzero
// scalar multiples, block by block. For p = 2 this is coordinate-identical
// to the cyclic layout.
inline LinearCode variation_simplex(const FieldPtr& construction) {
    const std::uint32_t q = construction->size();
    const std::uint32_t p = static_cast<std::uint32_t>(construction->characteristic());
    if (q < 3) fail(errc::bad_length, "construction field must have at least 3 elements");
    const std::uint32_t h = (q - 1) / (p - 1);
    LinearCode code = detail::trace_code(CodeKind::variation_simplex, construction, static_cast<int>(q - 1),
                                         [p, h](int j) {
                                             const std::uint32_t i = static_cast<std::uint32_t>(j) / (p - 1);
                                             const std::uint32_t s = static_cast<std::uint32_t>(j) % (p - 1);
                                             return static_cast<std::uint64_t>(i) + static_cast<std::uint64_t>(s) * h;
                                         });
    code.construction_field_ = construction;
    return code;
}

inline LinearCode raw_code(FieldPtr field, int n, int k, std::vector<FieldElement> gen) {
    return LinearCode(CodeKind::raw, std::move(field), n, k, std::move(gen));
}

// Codewords that vanish on T, restricted to the other coordinates. The new
// dimension is k minus the rank of the T-columns (exactly k - |T| for MDS
// parents); shortening away every dimension is refused.
inline LinearCode shorten(const LinearCode& parent, std::vector<int> T) {
    const Field& F = parent.field();
    const int n = parent.length();
    const int k = parent.dimension();
    std::sort(T.begin(), T.end());
    if (std::adjacent_find(T.begin(), T.end()) != T.end())
        fail(errc::shorten_out_of_range, "shortening positions must be distinct");
    for (int t : T)
        if (t < 0 || t >= n) fail(errc::shorten_out_of_range, "shortening position out of range");
    const int t = static_cast<int>(T.size());
    if (t == 0) fail(errc::shorten_out_of_range, "shortening position list is empty");
    if (t >= n) fail(errc::shorten_out_of_range, "shortening would leave an empty code");

    // Nullspace of the k x t column block, messages m with (mG)|_T = 0.
    std::vector<FieldElement> B(static_cast<std::size_t>(t) * k, F.zero());
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < k; ++j)
            B[static_cast<std::size_t>(i) * k + j] = parent.generator_at(j, T[static_cast<std::size_t>(i)]);
    const std::vector<int> pivots = detail::rref(F, B, t, k);
    const int rank = static_cast<int>(pivots.size());
    const int nk = k - rank;
    if (nk < 1) fail(errc::shorten_out_of_range, "shortening would leave the zero code");

    std::vector<FieldElement> gen;
    gen.reserve(static_cast<std::size_t>(nk) * (n - t));
    std::vector<char> is_pivot(static_cast<std::size_t>(k), 0);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = 1;
    for (int fc = 0; fc < k; ++fc) {
        if (is_pivot[static_cast<std::size_t>(fc)]) continue;
        std::vector<FieldElement> msg(static_cast<std::size_t>(k), F.zero());
        msg[static_cast<std::size_t>(fc)] = F.one();
        for (int r = 0; r < rank; ++r)
            msg[static_cast<std::size_t>(pivots[static_cast<std::size_t>(r)])] =
                F.neg(B[static_cast<std::size_t>(r) * k + fc]);
        const Codeword w = parent.codeword(msg);
        for (int j = 0; j < n; ++j)
            if (!std::binary_search(T.begin(), T.end(), j)) gen.push_back(w[static_cast<std::size_t>(j)]);
    }
    LinearCode code(CodeKind::shortened, parent.field_ptr(), n - t, nk, std::move(gen));
    code.shorten_T_ = std::move(T);
    code.construction_field_ = parent.construction_field();
    code.mds_ = parent.mds_by_construction() && nk == k - t;
    return code;
}

struct MessageRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;
    friend bool operator==(const MessageRange&, const MessageRange&) = default;
};

// Contiguous, deterministic split: range sizes differ by at most one, the
// longer ones first. Independent of thread scheduling by construction.
inline std::vector<MessageRange> partition_messages(std::uint64_t total, int workers) {
    if (workers < 1) workers = 1;
    std::vector<MessageRange> out;
    const std::uint64_t w = static_cast<std::uint64_t>(workers);
    const std::uint64_t base = total / w;
    const std::uint64_t extra = total % w;
    std::uint64_t at = 0;
    for (std::uint64_t i = 0; i < w; ++i) {
        const std::uint64_t len = base + (i < extra ? 1 : 0);
        out.push_back({at, at + len});
        at += len;
    }
    return out;
}

// Visits messages begin..end-1 in lexicographic order (coordinate 0 most
// significant); the codeword buffer is updated incrementally and reused.
// Visitor signature: void(std::uint64_t message_index, const Codeword&).
template <class Visitor>
void for_each_codeword(const LinearCode& code, MessageRange range, Visitor&& visit) {
    const Field& F = code.field();
    const std::uint64_t q = F.size();
    const int k = code.dimension();
    const int n = code.length();
    if (range.begin >= range.end) return;

    std::vector<std::uint32_t> digits(static_cast<std::size_t>(k), 0);
    {
        std::uint64_t v = range.begin;
        for (int d = k - 1; d >= 0; --d) {
            digits[static_cast<std::size_t>(d)] = static_cast<std::uint32_t>(v % q);
            v /= q;
        }
    }
    std::vector<FieldElement> msg(static_cast<std::size_t>(k));
    for (int d = 0; d < k; ++d) msg[static_cast<std::size_t>(d)] = F.from_index(digits[static_cast<std::size_t>(d)]);
    Codeword word = code.codeword(msg);

    for (std::uint64_t index = range.begin;;) {
        visit(index, static_cast<const Codeword&>(word));
        if (++index >= range.end) break;
        // Odometer step; each changed digit contributes (new - old) * row.
        for (int d = k - 1; d >= 0; --d) {
            const std::uint32_t old = digits[static_cast<std::size_t>(d)];
            const std::uint32_t next = (old + 1 == q) ? 0 : old + 1;
            digits[static_cast<std::size_t>(d)] = next;
            const FieldElement delta = F.sub(F.from_index(next), F.from_index(old));
            if (!F.is_zero(delta))
                for (int j = 0; j < n; ++j)
                    word[static_cast<std::size_t>(j)] =
                        F.add(word[static_cast<std::size_t>(j)], F.mul(delta, code.generator_at(d, j)));
            if (next != 0) break;
        }
    }
}

inline std::vector<Codeword> all_codewords(const LinearCode& code,
                                           std::uint64_t guard = default_enumeration_guard) {
    const std::uint64_t total = code.message_count_checked(guard);
    std::vector<Codeword> out;
    out.reserve(static_cast<std::size_t>(total));
    for_each_codeword(code, {0, total}, [&](std::uint64_t, const Codeword& w) { out.push_back(w); });
    return out;
}

} // namespace sympair
