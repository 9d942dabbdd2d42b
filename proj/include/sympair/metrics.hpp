#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <mutex>
#include <string_view>
#include <thread>
#include <vector>

#include "bigint.hpp"
#include "codes.hpp"
#include "error.hpp"
#include "field.hpp"

namespace sympair {

// ---- b-symbol reads and weights -------------------------------------------

// Entry i is the window (x_i, x_{i+1}, ..., x_{i+b-1}), indices cyclic.
inline std::vector<Codeword> read_vector(const Codeword& x, int b) {
    const int n = static_cast<int>(x.size());
    if (n < 1) fail(errc::bad_length, "empty word");
    if (b < 1 || b > n) fail(errc::bad_window, "window width must satisfy 1 <= b <= n");
    std::vector<Codeword> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Codeword& w = out[static_cast<std::size_t>(i)];
        w.reserve(static_cast<std::size_t>(b));
        for (int t = 0; t < b; ++t) w.push_back(x[static_cast<std::size_t>((i + t) % n)]);
    }
    return out;
}

inline int hamming_weight(const Codeword& x) {
    int w = 0;
    for (FieldElement e : x) w += (e.idx != 0);
    return w;
}

// Number of windows of width b containing a nonzero symbol; the window scan
// is the definition, kept as the reference implementation.
inline int b_weight(const Codeword& x, int b) {
    const int n = static_cast<int>(x.size());
    if (n < 1) fail(errc::bad_length, "empty word");
    if (b < 1 || b > n) fail(errc::bad_window, "window width must satisfy 1 <= b <= n");
    int w = 0;
    for (int i = 0; i < n; ++i) {
        bool nonzero = false;
        for (int t = 0; t < b && !nonzero; ++t) nonzero = x[static_cast<std::size_t>((i + t) % n)].idx != 0;
        w += nonzero;
    }
    return w;
}

// w_b for every b in 1..b_max at once. A window is all-zero iff it sits
// inside a circular zero run, so w_b = n - sum over runs of max(L-b+1, 0);
// two suffix sums over the run-length histogram give all widths in O(n).
inline std::vector<int> b_weights_up_to(const Codeword& x, int b_max) {
    const int n = static_cast<int>(x.size());
    if (n < 1) fail(errc::bad_length, "empty word");
    if (b_max < 1 || b_max > n) fail(errc::bad_window, "window width must satisfy 1 <= b <= n");
    std::vector<int> w(static_cast<std::size_t>(b_max) + 1, 0);
    int first = -1;
    for (int i = 0; i < n; ++i)
        if (x[static_cast<std::size_t>(i)].idx != 0) { first = i; break; }
    if (first < 0) return w; // zero word: w_b = 0 for all b
    std::vector<int> run_count(static_cast<std::size_t>(n) + 2, 0);
    int run = 0;
    for (int t = 1; t <= n; ++t) {
        if (x[static_cast<std::size_t>((first + t) % n)].idx == 0) {
            ++run;
        } else if (run > 0) {
            ++run_count[static_cast<std::size_t>(run)];
            run = 0;
        }
    }
    long long c1 = 0, c2 = 0; // suffix counts of runs and of their lengths
    std::vector<long long> zero_windows(static_cast<std::size_t>(b_max) + 2, 0);
    for (int b = n; b >= 1; --b) {
        c1 += run_count[static_cast<std::size_t>(b)];
        c2 += static_cast<long long>(b) * run_count[static_cast<std::size_t>(b)];
        if (b <= b_max) zero_windows[static_cast<std::size_t>(b)] = c2 - static_cast<long long>(b - 1) * c1;
    }
    for (int b = 1; b <= b_max; ++b)
        w[static_cast<std::size_t>(b)] = n - static_cast<int>(zero_windows[static_cast<std::size_t>(b)]);
    return w;
}

inline int b_distance(const Field& F, const Codeword& x, const Codeword& y, int b) {
    if (x.size() != y.size()) fail(errc::length_mismatch, "words have different lengths");
    Codeword d(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = F.sub(x[i], y[i]);
    return b_weight(d, b);
}

// ---- exhaustive weight distributions ---------------------------------------

enum class Source { brute_force, formula };

inline std::string_view to_string(Source s) {
    return s == Source::brute_force ? "brute_force" : "formula";
}

struct WeightDistribution {
    int b = 1;
    int n = 0;
    Source source = Source::brute_force;
    std::vector<bigint> counts; // counts[w], w = 0..n

    bigint total() const {
        bigint t = 0;
        for (const bigint& c : counts) t += c;
        return t;
    }
};

struct EnumOptions {
    std::uint64_t guard = default_enumeration_guard;
    int workers = 1;
    // Enumerate one message per scalar class (first nonzero digit fixed to 1)
    // and weight the tally by q-1; valid because scaling by a unit preserves
    // zero patterns coordinatewise. Off switches to plain full enumeration.
    bool scalar_classes = true;
};

namespace detail {

// Enumeration is organized in blocks: in scalar-class mode, block j covers
// the messages whose first nonzero digit sits at level j with value one and
// whose k-1-j trailing digits run free; in plain mode a single block runs
// all k digits free. Inside a block, the trailing digit runs innermost so a
// policy can keep the partial word for the other digits incrementally.
struct UnitLayout {
    std::uint64_t q = 0;
    int k = 0;
    bool class_mode = false;

    int block_count() const { return class_mode ? k : 1; }
    int fixed_level(int blk) const { return class_mode ? blk : -1; }
    int free_count(int blk) const { return class_mode ? k - 1 - blk : k; }

    std::uint64_t block_size(int blk) const {
        std::uint64_t s = 1;
        for (int i = 0; i < free_count(blk); ++i) s *= q;
        return s;
    }

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (int blk = 0; blk < block_count(); ++blk) t += block_size(blk);
        return t;
    }
};

// Policy contract:
//   begin_block(fixed_level)            reset base word (level < 0: zero word)
//   load_prefix(first_level, digits)    base plus the non-trailing digits
//   step_prefix(level, delta_idx)       add delta * row[level] to the prefix
//   visit_run(v_lo, v_hi)               tally prefix + v * row[k-1], v in [v_lo, v_hi)
//   visit_base()                        tally the bare base word (no free digits)
template <class Policy>
void enumerate_units(const UnitLayout& L, std::uint64_t lo, std::uint64_t hi, Policy& pol) {
    const std::uint64_t q = L.q;
    std::uint64_t off = 0;
    for (int blk = 0; blk < L.block_count() && off < hi; ++blk) {
        const std::uint64_t size = L.block_size(blk);
        const std::uint64_t b_lo = std::max(lo, off);
        const std::uint64_t b_hi = std::min(hi, off + size);
        off += size;
        if (b_lo >= b_hi) continue;
        const std::uint64_t s_lo = b_lo - (off - size);
        const std::uint64_t s_hi = b_hi - (off - size);
        const int f = L.free_count(blk);
        pol.begin_block(L.fixed_level(blk));
        if (f == 0) {
            pol.visit_base();
            continue;
        }
        const int first_level = L.k - f;
        const std::uint64_t hp_lo = s_lo / q;
        const std::uint64_t hp_hi = (s_hi - 1) / q;
        std::vector<std::uint32_t> up(static_cast<std::size_t>(f - 1), 0);
        {
            std::uint64_t v = hp_lo;
            for (int t = f - 2; t >= 0; --t) {
                up[static_cast<std::size_t>(t)] = static_cast<std::uint32_t>(v % q);
                v /= q;
            }
        }
        pol.load_prefix(first_level, up);
        for (std::uint64_t hp = hp_lo;; ++hp) {
            const std::uint32_t v_lo = (hp == hp_lo) ? static_cast<std::uint32_t>(s_lo % q) : 0;
            const std::uint32_t v_hi = (hp == hp_hi) ? static_cast<std::uint32_t>((s_hi - 1) % q) + 1
                                                     : static_cast<std::uint32_t>(q);
            pol.visit_run(v_lo, v_hi);
            if (hp == hp_hi) break;
            for (int t = f - 2; t >= 0; --t) {
                const std::uint32_t old = up[static_cast<std::size_t>(t)];
                const std::uint32_t next = (old + 1 == q) ? 0 : old + 1;
                up[static_cast<std::size_t>(t)] = next;
                pol.step_prefix(first_level + t, old, next);
                if (next != 0) break;
            }
        }
    }
}

inline std::uint64_t rotr_bits(std::uint64_t x, int t, int n, std::uint64_t nmask) {
    if (t == 0) return x;
    return ((x >> t) | (x << (n - t))) & nmask;
}

// Union of the first b right-rotations of the nonzero mask; bit i set means
// window i contains a nonzero symbol. Doubles the covered span each step.
inline int mask_b_weight(std::uint64_t mask, int b, int n, std::uint64_t nmask) {
    std::uint64_t acc = mask;
    int got = 1;
    while (got < b) {
        const int step = std::min(got, b - got);
        acc |= rotr_bits(acc, step, n, nmask);
        got += step;
    }
    return std::popcount(acc);
}

// Byte-table path: q <= 256 and n <= 64. Codewords live as uint8 index rows;
// the weight comes from the nonzero bitmask, never materializing the word.
class BytePolicy {
public:
    BytePolicy(const LinearCode& code, int b)
        : n_(code.length()), k_(code.dimension()), q_(code.field().size()), b_(b) {
        const Field& F = code.field();
        nmask_ = (n_ == 64) ? ~0ull : ((1ull << n_) - 1);
        add_.assign(static_cast<std::size_t>(q_) * q_, 0);
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t c = 0; c < q_; ++c)
                add_[static_cast<std::size_t>(a) * q_ + c] = static_cast<std::uint8_t>(F.add_idx(a, c));
        sub_.assign(static_cast<std::size_t>(q_) * q_, 0);
        for (std::uint32_t c = 0; c < q_; ++c)
            for (std::uint32_t x = 0; x < q_; ++x)
                sub_[static_cast<std::size_t>(add_[static_cast<std::size_t>(c) * q_ + x]) * q_ + c] =
                    static_cast<std::uint8_t>(x);
        srow_.assign(static_cast<std::size_t>(k_) * q_ * n_, 0);
        for (int d = 0; d < k_; ++d)
            for (std::uint32_t v = 0; v < q_; ++v)
                for (int j = 0; j < n_; ++j)
                    srow_[(static_cast<std::size_t>(d) * q_ + v) * n_ + j] =
                        static_cast<std::uint8_t>(F.mul_idx(v, code.generator_at(d, j).idx));
        base_.assign(static_cast<std::size_t>(n_), 0);
        prefix_.assign(static_cast<std::size_t>(n_), 0);
        hist_.assign(static_cast<std::size_t>(n_) + 1, 0);
    }

    BytePolicy fork() const {
        BytePolicy p(*this);
        std::fill(p.hist_.begin(), p.hist_.end(), 0);
        return p;
    }

    void begin_block(int fixed_level) {
        if (fixed_level < 0) {
            std::fill(base_.begin(), base_.end(), 0);
        } else {
            const std::uint8_t* r = row(fixed_level, 1);
            std::copy(r, r + n_, base_.begin());
        }
    }

    void load_prefix(int first_level, const std::vector<std::uint32_t>& up) {
        prefix_ = base_;
        for (std::size_t t = 0; t < up.size(); ++t)
            add_row(prefix_.data(), row(first_level + static_cast<int>(t), up[t]));
    }

    void step_prefix(int level, std::uint32_t old_v, std::uint32_t new_v) {
        // prefix += (new - old) * row; the scaled-row table already holds
        // every multiple, so the delta is just another table row.
        const std::uint32_t delta = sub_[static_cast<std::size_t>(new_v) * q_ + old_v];
        add_row(prefix_.data(), row(level, delta));
    }

    void visit_run(std::uint32_t v_lo, std::uint32_t v_hi) {
        const std::uint8_t* pre = prefix_.data();
        for (std::uint32_t v = v_lo; v < v_hi; ++v) {
            const std::uint8_t* sr = row(k_ - 1, v);
            std::uint64_t mask = 0;
            for (int j = 0; j < n_; ++j) {
                const std::uint8_t x = add_[static_cast<std::size_t>(pre[j]) * q_ + sr[j]];
                mask |= static_cast<std::uint64_t>(x != 0) << j;
            }
            ++hist_[static_cast<std::size_t>(mask_b_weight(mask, b_, n_, nmask_))];
        }
    }

    void visit_base() {
        std::uint64_t mask = 0;
        for (int j = 0; j < n_; ++j) mask |= static_cast<std::uint64_t>(base_[static_cast<std::size_t>(j)] != 0) << j;
        ++hist_[static_cast<std::size_t>(mask_b_weight(mask, b_, n_, nmask_))];
    }

    const std::vector<std::uint64_t>& hist() const { return hist_; }

private:
    const std::uint8_t* row(int level, std::uint32_t v) const {
        return srow_.data() + (static_cast<std::size_t>(level) * q_ + v) * n_;
    }

    void add_row(std::uint8_t* dst, const std::uint8_t* src) const {
        for (int j = 0; j < n_; ++j) dst[j] = add_[static_cast<std::size_t>(dst[j]) * q_ + src[j]];
    }

    int n_, k_;
    std::uint32_t q_;
    int b_;
    std::uint64_t nmask_;
    std::vector<std::uint8_t> add_;
    std::vector<std::uint8_t> sub_; // sub_[a*q + c] = a - c
    std::vector<std::uint8_t> srow_;
    std::vector<std::uint8_t> base_;
    std::vector<std::uint8_t> prefix_;
    std::vector<std::uint64_t> hist_;
};

// Generic path: uint32 index words, scaled rows computed on the fly, weight
// from circular zero runs. Handles any q <= 2^20 and any length.
class IndexPolicy {
public:
    IndexPolicy(const LinearCode& code, int b)
        : F_(&code.field()), n_(code.length()), k_(code.dimension()), b_(b) {
        rows_.assign(static_cast<std::size_t>(k_) * n_, 0);
        for (int d = 0; d < k_; ++d)
            for (int j = 0; j < n_; ++j)
                rows_[static_cast<std::size_t>(d) * n_ + j] = code.generator_at(d, j).idx;
        base_.assign(static_cast<std::size_t>(n_), 0);
        prefix_.assign(static_cast<std::size_t>(n_), 0);
        word_.assign(static_cast<std::size_t>(n_), 0);
        hist_.assign(static_cast<std::size_t>(n_) + 1, 0);
    }

    IndexPolicy fork() const {
        IndexPolicy p(*this);
        std::fill(p.hist_.begin(), p.hist_.end(), 0);
        return p;
    }

    void begin_block(int fixed_level) {
        if (fixed_level < 0) {
            std::fill(base_.begin(), base_.end(), 0);
        } else {
            const std::uint32_t* r = rows_.data() + static_cast<std::size_t>(fixed_level) * n_;
            std::copy(r, r + n_, base_.begin());
        }
    }

    void load_prefix(int first_level, const std::vector<std::uint32_t>& up) {
        prefix_ = base_;
        for (std::size_t t = 0; t < up.size(); ++t)
            add_scaled(prefix_.data(), first_level + static_cast<int>(t), up[t]);
    }

    void step_prefix(int level, std::uint32_t old_v, std::uint32_t new_v) {
        const std::uint32_t delta = F_->add_idx(new_v, F_->neg_idx(old_v));
        add_scaled(prefix_.data(), level, delta);
    }

    void visit_run(std::uint32_t v_lo, std::uint32_t v_hi) {
        const std::uint32_t* last = rows_.data() + static_cast<std::size_t>(k_ - 1) * n_;
        for (std::uint32_t v = v_lo; v < v_hi; ++v) {
            if (v == 0) {
                std::copy(prefix_.begin(), prefix_.end(), word_.begin());
            } else {
                for (int j = 0; j < n_; ++j)
                    word_[static_cast<std::size_t>(j)] =
                        F_->add_idx(prefix_[static_cast<std::size_t>(j)], F_->mul_idx(v, last[j]));
            }
            tally(word_.data());
        }
    }

    void visit_base() { tally(base_.data()); }

    const std::vector<std::uint64_t>& hist() const { return hist_; }

private:
    void add_scaled(std::uint32_t* dst, int level, std::uint32_t v) {
        if (v == 0) return;
        const std::uint32_t* r = rows_.data() + static_cast<std::size_t>(level) * n_;
        for (int j = 0; j < n_; ++j) dst[j] = F_->add_idx(dst[j], F_->mul_idx(v, r[j]));
    }

    void tally(const std::uint32_t* w) {
        // w_b = n - (number of all-zero windows); all-zero windows live in
        // circular zero runs, contributing max(L - b + 1, 0) each.
        int first = -1;
        for (int i = 0; i < n_; ++i)
            if (w[i] != 0) { first = i; break; }
        if (first < 0) {
            ++hist_[0];
            return;
        }
        long long zero_windows = 0;
        int run = 0;
        for (int t = 1; t <= n_; ++t) {
            if (w[(first + t) % n_] == 0) {
                ++run;
            } else {
                if (run >= b_) zero_windows += run - b_ + 1;
                run = 0;
            }
        }
        ++hist_[static_cast<std::size_t>(n_ - zero_windows)];
    }

    const Field* F_;
    int n_, k_, b_;
    std::vector<std::uint32_t> rows_;
    std::vector<std::uint32_t> base_;
    std::vector<std::uint32_t> prefix_;
    std::vector<std::uint32_t> word_;
    std::vector<std::uint64_t> hist_;
};

template <class Policy>
std::vector<std::uint64_t> run_policy(const UnitLayout& layout, Policy& proto, int workers) {
    const std::uint64_t total = layout.total();
    const std::vector<MessageRange> ranges = partition_messages(total, workers);
    if (ranges.size() == 1 || total < 2) {
        enumerate_units(layout, 0, total, proto);
        return proto.hist();
    }
    std::vector<Policy> locals;
    locals.reserve(ranges.size());
    for (std::size_t i = 0; i < ranges.size(); ++i) locals.push_back(proto.fork());
    std::vector<std::thread> threads;
    threads.reserve(ranges.size());
    for (std::size_t i = 0; i < ranges.size(); ++i)
        threads.emplace_back([&, i] { enumerate_units(layout, ranges[i].begin, ranges[i].end, locals[i]); });
    for (std::thread& t : threads) t.join();
    std::vector<std::uint64_t> merged(proto.hist().size(), 0);
    for (const Policy& p : locals)
        for (std::size_t w = 0; w < merged.size(); ++w) merged[w] += p.hist()[w];
    return merged;
}

} // namespace detail

// Exact distribution of w_b over all q^k codewords. Deterministic for any
// worker count: the unit space is split into contiguous ranges and the
// integer histograms merged in range order.
inline WeightDistribution b_weight_distribution(const LinearCode& code, int b, const EnumOptions& opts = {}) {
    const int n = code.length();
    if (b < 1 || b > n) fail(errc::bad_window, "window width must satisfy 1 <= b <= n");
    code.message_count_checked(opts.guard);

    const std::uint32_t q = code.field().size();
    detail::UnitLayout layout{q, code.dimension(), opts.scalar_classes};

    std::vector<std::uint64_t> hist;
    if (q <= 256 && n <= 64) {
        detail::BytePolicy proto(code, b);
        hist = detail::run_policy(layout, proto, opts.workers);
    } else {
        detail::IndexPolicy proto(code, b);
        hist = detail::run_policy(layout, proto, opts.workers);
    }

    WeightDistribution dist;
    dist.b = b;
    dist.n = n;
    dist.source = Source::brute_force;
    dist.counts.assign(static_cast<std::size_t>(n) + 1, 0);
    const bigint mult = layout.class_mode ? bigint(q - 1) : bigint(1);
    for (std::size_t w = 0; w < hist.size(); ++w) dist.counts[w] = bigint(hist[w]) * mult;
    if (layout.class_mode) dist.counts[0] += 1;

    if (dist.total() != code.message_count())
        fail(errc::enumeration_too_large, "internal tally does not sum to q^k"); // defensive, never expected
    return dist;
}

// Smallest w_b over nonzero codewords; by linearity this is the minimum
// b-distance of the code.
inline int min_b_distance(const LinearCode& code, int b, const EnumOptions& opts = {}) {
    const WeightDistribution dist = b_weight_distribution(code, b, opts);
    for (std::size_t w = 1; w < dist.counts.size(); ++w)
        if (dist.counts[w] != 0) return static_cast<int>(w);
    fail(errc::bad_dimension, "code has no nonzero codeword");
}

} // namespace sympair
