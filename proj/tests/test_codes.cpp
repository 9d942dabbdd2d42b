#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include <sympair/codes.hpp>

#include "support/oracles.hpp"

using namespace sympair;

namespace {

Codeword word_of_ints(const Field& F, const std::vector<int>& vals) {
    Codeword w;
    w.reserve(vals.size());
    for (int v : vals) w.push_back(F.element({v}));
    return w;
}

// Simplex codes live over GF(p); the message picking out alpha = x (the
// construction field's generator) is the basis vector at position 1.
std::vector<FieldElement> alpha_is_x_message(const LinearCode& code) {
    std::vector<FieldElement> msg(static_cast<std::size_t>(code.dimension()), code.field().zero());
    msg[1] = code.field().one();
    return msg;
}

} // namespace

TEST_CASE("RS generator matrix is the Vandermonde of the points", "[codes]") {
    const FieldPtr F = make_field(2, 3, {1, 0, 1, 1});
    const LinearCode code = rs_code(F, consecutive_powers(*F, 4), 3);
    REQUIRE(code.length() == 4);
    REQUIRE(code.dimension() == 3);
    REQUIRE(code.kind() == CodeKind::rs);
    REQUIRE(code.mds_by_construction());
    for (int j = 0; j < 4; ++j) {
        REQUIRE(code.generator_at(0, j) == F->one());
        REQUIRE(code.generator_at(1, j) == F->exp(static_cast<std::uint64_t>(j)));
        REQUIRE(code.generator_at(2, j) == F->exp(static_cast<std::uint64_t>(2 * j)));
    }
    REQUIRE(code.points() == consecutive_powers(*F, 4));
    REQUIRE(code.describe().find("rs[n=4,k=3]") != std::string::npos);
}

TEST_CASE("RS construction rejects repeated points and bad dimensions", "[codes]") {
    const FieldPtr F = make_field(5, 1);
    std::vector<FieldElement> pts = {F->element({1}), F->element({2}), F->element({1})};
    REQUIRE_THROWS_AS(rs_code(F, pts, 2), error);
    REQUIRE_THROWS_AS(rs_code(F, consecutive_powers(*F, 4), 5), error);
    REQUIRE_THROWS_AS(rs_code(F, consecutive_powers(*F, 4), 0), error);
    REQUIRE_THROWS_AS(rs_code(F, {}, 1), error);
    // more points than the multiplicative group has elements
    REQUIRE_THROWS_AS(rs_code(F, consecutive_powers(*F, 5), 2), error);
}

TEST_CASE("message order is lexicographic, coordinate 0 most significant", "[codes]") {
    const FieldPtr F = make_field(2, 2);
    const LinearCode code = rs_code(F, consecutive_powers(*F, 3), 2);
    REQUIRE(code.message_count() == 16);
    REQUIRE(code.message_count_checked() == 16);

    REQUIRE(code.message_at(0) == std::vector<FieldElement>{F->zero(), F->zero()});
    REQUIRE(code.message_at(1) == std::vector<FieldElement>{F->zero(), F->from_index(1)});
    REQUIRE(code.message_at(4) == std::vector<FieldElement>{F->from_index(1), F->zero()});
    REQUIRE(code.message_at(15) == std::vector<FieldElement>{F->from_index(3), F->from_index(3)});
    REQUIRE_THROWS_AS(code.message_at(16), error);

    REQUIRE(code.codeword_at(0) == Codeword(3, F->zero()));
    REQUIRE(code.codeword_at(5) == code.codeword(code.message_at(5)));
}

TEST_CASE("enumeration guard refuses oversized codes", "[codes]") {
    const FieldPtr F = make_field(3, 3);
    const LinearCode code = rs_code(F, consecutive_powers(*F, 5), 4);
    REQUIRE(code.message_count() == 531441);
    REQUIRE_THROWS_AS(code.message_count_checked(1024), error);
    REQUIRE(code.message_count_checked(531441) == 531441);
}

TEST_CASE("cyclic simplex over GF(8) reproduces the trace layout", "[codes]") {
    const FieldPtr E = make_field(2, 3, {1, 0, 1, 1});
    const LinearCode code = cyclic_simplex(E);
    REQUIRE(code.length() == 7);
    REQUIRE(code.dimension() == 3);
    REQUIRE(code.field().size() == 2);
    REQUIRE(code.construction_field());
    REQUIRE(code.construction_field()->size() == 8);
    REQUIRE_FALSE(code.mds_by_construction());

    // row r, column j is Tr(g^j * x^r)
    for (int r = 0; r < 3; ++r)
        for (int j = 0; j < 7; ++j) {
            const int expected = E->trace(E->mul(E->exp(static_cast<std::uint64_t>(j)),
                                                 E->pow(E->generator(), r)));
            REQUIRE(code.generator_at(r, j) == code.field().element({expected}));
        }

    const Codeword c_g = code.codeword(alpha_is_x_message(code));
    REQUIRE(c_g == word_of_ints(code.field(), {1, 1, 0, 1, 0, 0, 1}));
}

TEST_CASE("cyclic and variation simplex words over GF(27)", "[codes]") {
    const FieldPtr E = make_field(3, 3, {1, 2, 0, 1});
    const LinearCode cyc = cyclic_simplex(E);
    const LinearCode var = variation_simplex(E);
    REQUIRE(cyc.length() == 26);
    REQUIRE(var.length() == 26);
    REQUIRE(cyc.dimension() == 3);
    REQUIRE(var.dimension() == 3);

    // Hand-expanded from the GF(27) trace table for alpha = g.
    const std::vector<int> cyc_g = {0, 2, 0, 2, 1, 2, 2, 1, 0, 2, 2, 2, 0,
                                    0, 1, 0, 1, 2, 1, 1, 2, 0, 1, 1, 1, 0};
    const std::vector<int> var_g = {0, 0, 2, 1, 0, 0, 2, 1, 1, 2, 2, 1, 2,
                                    1, 1, 2, 0, 0, 2, 1, 2, 1, 2, 1, 0, 0};
    REQUIRE(cyc.codeword(alpha_is_x_message(cyc)) == word_of_ints(cyc.field(), cyc_g));
    REQUIRE(var.codeword(alpha_is_x_message(var)) == word_of_ints(var.field(), var_g));

    // The variation layout is a fixed permutation of the cyclic one:
    // coordinate i(p-1)+j carries exponent i + j*h.
    const int h = 13, p = 3;
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < p - 1; ++j)
            for (int r = 0; r < 3; ++r)
                REQUIRE(var.generator_at(r, i * (p - 1) + j) == cyc.generator_at(r, (i + j * h) % 26));
}

TEST_CASE("standard simplex truncates the cyclic layout", "[codes]") {
    const FieldPtr E = make_field(3, 3, {1, 2, 0, 1});
    const LinearCode cyc = cyclic_simplex(E);
    const LinearCode std_code = standard_simplex(E);
    REQUIRE(std_code.length() == 13); // h = (27-1)/(3-1)
    REQUIRE(std_code.dimension() == 3);
    for (int r = 0; r < 3; ++r)
        for (int j = 0; j < 13; ++j) REQUIRE(std_code.generator_at(r, j) == cyc.generator_at(r, j));
}

TEST_CASE("variation simplex in characteristic 2 is the cyclic layout", "[codes]") {
    const FieldPtr E = make_field(2, 4);
    const LinearCode cyc = cyclic_simplex(E);
    const LinearCode var = variation_simplex(E);
    REQUIRE(cyc.generator() == var.generator());
}

TEST_CASE("shortening drops the chosen coordinates and the matching dimensions", "[codes]") {
    const FieldPtr F = make_field(2, 3, {1, 0, 1, 1});
    const LinearCode parent = rs_code(F, consecutive_powers(*F, 4), 3);
    const LinearCode s = shorten(parent, {3});
    REQUIRE(s.length() == 3);
    REQUIRE(s.dimension() == 2);
    REQUIRE(s.kind() == CodeKind::shortened);
    REQUIRE(s.mds_by_construction());
    REQUIRE(s.shortened_at() == std::vector<int>{3});

    // The shortened codewords are exactly the parent codewords vanishing on
    // the dropped coordinate, projected to the rest.
    std::set<Codeword> expected;
    for (std::uint64_t i = 0; i < 512; ++i) {
        const Codeword w = parent.codeword_at(i);
        if (w[3] == F->zero()) expected.insert({w[0], w[1], w[2]});
    }
    std::set<Codeword> got;
    for (std::uint64_t i = 0; i < 64; ++i) got.insert(s.codeword_at(i));
    REQUIRE(got == expected);
    REQUIRE(expected.size() == 64);
}

TEST_CASE("shortening twice equals shortening once with the union", "[codes]") {
    const FieldPtr F = make_field(3, 3, {1, 2, 0, 1});
    const LinearCode parent = rs_code(F, consecutive_powers(*F, 5), 4);
    const LinearCode once = shorten(parent, {3, 4});
    const LinearCode twice = shorten(shorten(parent, {4}), {3});
    REQUIRE(once.length() == 3);
    REQUIRE(once.dimension() == 2);
    REQUIRE(once.mds_by_construction());
    std::set<Codeword> a, b;
    for (std::uint64_t i = 0; i < 729; ++i) {
        a.insert(once.codeword_at(i));
        b.insert(twice.codeword_at(i));
    }
    REQUIRE(a == b);
}

TEST_CASE("shortening rejects bad position sets", "[codes]") {
    const FieldPtr F = make_field(2, 3);
    const LinearCode parent = rs_code(F, consecutive_powers(*F, 4), 2);
    REQUIRE_THROWS_AS(shorten(parent, {4}), error);
    REQUIRE_THROWS_AS(shorten(parent, {-1}), error);
    REQUIRE_THROWS_AS(shorten(parent, {1, 1}), error);
    REQUIRE_THROWS_AS(shorten(parent, {}), error);
    REQUIRE_THROWS_AS(shorten(parent, {0, 1, 2, 3}), error);
    // [4,2] shortened at 2 coordinates leaves nothing
    REQUIRE_THROWS_AS(shorten(parent, {0, 1}), error);
}

TEST_CASE("raw codes validate their generator matrix", "[codes]") {
    const FieldPtr F = make_field(2, 1);
    const std::vector<FieldElement> good = {F->one(), F->zero(), F->one(),
                                            F->zero(), F->one(), F->one()};
    const LinearCode code = raw_code(F, 3, 2, good);
    REQUIRE(code.kind() == CodeKind::raw);
    REQUIRE(code.dimension() == 2);

    const std::vector<FieldElement> dependent = {F->one(), F->zero(), F->one(),
                                                 F->one(), F->zero(), F->one()};
    REQUIRE_THROWS_AS(raw_code(F, 3, 2, dependent), error);
    const std::vector<FieldElement> truncated(good.begin(), good.end() - 1);
    REQUIRE_THROWS_AS(raw_code(F, 3, 2, truncated), error);
}

TEST_CASE("message partition is contiguous, covering and deterministic", "[codes]") {
    for (std::uint64_t total : {0ull, 1ull, 7ull, 64ull, 1000ull}) {
        for (int workers : {1, 2, 3, 8, 13}) {
            const std::vector<MessageRange> parts = partition_messages(total, workers);
            REQUIRE(parts.size() == static_cast<std::size_t>(workers));
            std::uint64_t at = 0;
            std::uint64_t longest = parts.empty() ? 0 : parts.front().end - parts.front().begin;
            for (const MessageRange& r : parts) {
                REQUIRE(r.begin == at);
                REQUIRE(r.end >= r.begin);
                const std::uint64_t len = r.end - r.begin;
                REQUIRE(len <= longest); // longer ranges come first
                REQUIRE(longest - len <= 1);
                at = r.end;
            }
            REQUIRE(at == total);
            REQUIRE(parts == partition_messages(total, workers));
        }
    }
}

TEST_CASE("incremental codeword walk matches direct evaluation", "[codes]") {
    const FieldPtr F = make_field(3, 2);
    const LinearCode code = rs_code(F, consecutive_powers(*F, 5), 3);
    const std::uint64_t total = code.message_count_checked();

    std::uint64_t seen = 0;
    for (const MessageRange& r : partition_messages(total, 4))
        for_each_codeword(code, r, [&](std::uint64_t index, const Codeword& w) {
            REQUIRE(index == seen);
            REQUIRE(w == code.codeword_at(index));
            ++seen;
        });
    REQUIRE(seen == total);

    const std::vector<Codeword> all = all_codewords(code);
    REQUIRE(all.size() == total);
    REQUIRE(all[17] == code.codeword_at(17));
}
