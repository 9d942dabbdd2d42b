// End-to-end acceptance run: one line per criterion, nonzero exit if any
// fails.  Each block re-derives its expectations from scratch (definitional
// window scans, frozen counts, polynomial interpolation) so a regression in
// the closed forms cannot hide behind the code that produced them.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <sympair/cli.hpp>

#include "support/oracles.hpp"

using namespace sympair;

namespace {

int failures = 0;
int criterion_index = 0;

struct check_failure {
    std::string what;
};

void check(bool cond, const std::string& what) {
    if (!cond) throw check_failure{what};
}

// max_seconds > 0 turns the stated runtime budget into a hard failure.
void criterion(const std::string& desc, const std::function<void()>& body, double max_seconds = 0) {
    const int idx = ++criterion_index;
    const auto t0 = std::chrono::steady_clock::now();
    std::string problem;
    try {
        body();
    } catch (const check_failure& f) {
        problem = f.what;
    } catch (const std::exception& e) {
        problem = std::string("exception: ") + e.what();
    } catch (...) {
        problem = "unknown exception";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (problem.empty() && max_seconds > 0 && secs > max_seconds) {
        std::ostringstream os;
        os << "exceeded the " << max_seconds << "s budget";
        problem = os.str();
    }
    failures += problem.empty() ? 0 : 1;
    std::cout << (problem.empty() ? "PASS" : "FAIL") << "  [" << idx << "] " << desc << " ("
              << std::fixed << std::setprecision(3) << secs << "s)\n";
    if (!problem.empty()) std::cout << "      " << problem << "\n";
    std::cout.flush();
}

std::string at(int q, int n, int k) {
    return " at q=" + std::to_string(q) + " n=" + std::to_string(n) + " k=" + std::to_string(k);
}

// filled by criterion 4, consumed by criterion 9
struct GridPoint {
    int q, n, k, d2;
};
std::vector<GridPoint> grid_cache;

} // namespace

int main() {
    criterion("pair distribution of the [4,3] code over GF(8): closed form, enumeration and frozen counts agree",
              [] {
                  const FieldPtr F = make_field(2, 3, {1, 0, 1, 1});
                  const LinearCode code = rs_code(F, consecutive_powers(*F, 4), 3);
                  const TheoremReport rep = verify_mds_pair_distribution(code, {});
                  check(rep.match, "closed form and enumeration disagree");
                  const std::vector<bigint> frozen = {1, 0, 0, 28, 483};
                  check(rep.formula.counts == frozen, "counts differ from the frozen reference");
              },
              1.0);

    criterion("pair distribution of the [5,4] code over GF(27) by plain single-worker enumeration", [] {
        const FieldPtr F = make_field(3, 3, {1, 2, 0, 1});
        const LinearCode code = rs_code(F, consecutive_powers(*F, 5), 4);
        EnumOptions eo;
        eo.workers = 1;
        eo.scalar_classes = false; // walk all 531441 messages one by one
        const WeightDistribution brute = b_weight_distribution(code, 2, eo);
        const std::vector<bigint> frozen = {1, 0, 0, 130, 3380, 527930};
        check(brute.counts == frozen, "enumerated counts differ from the frozen reference");
        check(mds_pair_distribution({5, 4, 27}).counts == frozen, "closed form differs");
    },
    30.0);

    criterion("pair counts interpolate to the expected polynomials in the alphabet size", [] {
        const std::vector<long> qs = {5, 7, 8, 9, 11, 13};
        const auto coeffs = [&qs](int n, int k, int w) {
            std::vector<bigint> ys;
            for (long q : qs)
                ys.push_back(mds_pair_distribution({n, k, static_cast<std::uint64_t>(q)})
                                 .counts[static_cast<std::size_t>(w)]);
            return oracle::interpolate_integer_polynomial(qs, ys);
        };
        using V = std::vector<bigint>;
        check(coeffs(4, 3, 3) == V{-4, 4}, "[4,3] w=3 should be 4(q-1)");
        check(coeffs(4, 3, 4) == V{3, -4, 0, 1}, "[4,3] w=4 should be q^3-4q+3");
        check(coeffs(5, 4, 3) == V{-5, 5}, "[5,4] w=3 should be 5(q-1)");
        check(coeffs(5, 4, 4) == V{5, -10, 5}, "[5,4] w=4 should be 5(q-1)^2");
        check(coeffs(5, 4, 5) == V{-1, 5, -5, 0, 1}, "[5,4] w=5 should be q^4-5q^2+5q-1");
    });

    criterion("closed form equals enumeration for every MDS code with q <= 16, n <= 8 (185 codes)", [] {
        const std::vector<int> qs = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};
        EnumOptions eo;
        eo.guard = max_enumeration_guard; // largest code is 16^8 messages
        int count = 0;
        for (int q : qs) {
            const int n_hi = std::min(8, q - 1);
            if (n_hi < 3) continue;
            const auto [p, m] = detail::factor_prime_power(static_cast<std::uint64_t>(q));
            const FieldPtr F = make_field(p, m);
            for (int n = 3; n <= n_hi; ++n) {
                const std::vector<FieldElement> points = consecutive_powers(*F, n);
                for (int k = 1; k <= n; ++k) {
                    const LinearCode code = rs_code(F, points, k);
                    const WeightDistribution brute = b_weight_distribution(code, 2, eo);
                    const WeightDistribution formula =
                        mds_pair_distribution({n, k, static_cast<std::uint64_t>(q)});
                    check(brute.counts == formula.counts, "mismatch" + at(q, n, k));
                    int d2 = 0;
                    for (int w = 1; w <= n; ++w)
                        if (formula.counts[static_cast<std::size_t>(w)] != 0) {
                            d2 = w;
                            break;
                        }
                    grid_cache.push_back({q, n, k, d2});
                    ++count;
                }
            }
        }
        check(count == 185, "expected 185 codes, checked " + std::to_string(count));
    });

    criterion("pair counts sum to q^k for every prime power q <= 32, n <= 12, and stay nonnegative "
              "wherever a code of that length exists (n <= q+1)",
              [] {
                  const std::vector<int> qs = {2,  3,  4,  5,  7,  8,  9,  11, 13,
                                               16, 17, 19, 23, 25, 27, 29, 31, 32};
                  for (int q : qs)
                      for (int n = 2; n <= 12; ++n)
                          for (int k = 1; k <= n; ++k) {
                              const WeightDistribution d =
                                  mds_pair_distribution({n, k, static_cast<std::uint64_t>(q)});
                              check(d.total() == bigint_pow(static_cast<std::uint64_t>(q),
                                                            static_cast<unsigned long>(k)),
                                    "counts do not sum to q^k" + at(q, n, k));
                              if (n <= q + 1)
                                  for (const bigint& c : d.counts)
                                      check(c >= 0, "negative count inside the code range" + at(q, n, k));
                          }
              },
              10.0);

    criterion("cyclic simplex layouts are one-weight at every window width (5 construction fields)", [] {
        const std::vector<std::pair<int, int>> pms = {{2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}};
        for (const auto& [p, m] : pms) {
            const FieldPtr E = make_field(p, m);
            const LinearCode code = cyclic_simplex(E);
            const int n = code.length();
            const SimplexParams P{p, m};
            for (std::uint64_t a = 1; a < E->size(); ++a) {
                const std::vector<int> w = b_weights_up_to(code.codeword_at(a), n);
                for (int b = 1; b <= n; ++b)
                    check(to_bigint(w[static_cast<std::size_t>(b)]) == cyclic_simplex_b_weight(P, b),
                          "weight off at p=" + std::to_string(p) + " m=" + std::to_string(m) +
                              " word=" + std::to_string(a) + " b=" + std::to_string(b));
            }
        }
        // frozen reference over GF(8): the word for message (0,1,0) and its weights
        const FieldPtr E = make_field(2, 3, {1, 0, 1, 1});
        const Codeword cg = cyclic_simplex(E).codeword_at(2);
        const std::vector<int> frozen = {1, 1, 0, 1, 0, 0, 1};
        for (int i = 0; i < 7; ++i)
            check(cg[static_cast<std::size_t>(i)].idx == static_cast<std::uint32_t>(frozen[static_cast<std::size_t>(i)]),
                  "frozen GF(8) word differs at position " + std::to_string(i));
        const std::vector<int> w = b_weights_up_to(cg, 7);
        check((std::vector<int>(w.begin() + 1, w.end()) == std::vector<int>{4, 6, 7, 7, 7, 7, 7}),
              "frozen GF(8) window weights differ");
    });

    criterion("variation layout over GF(27): every nonzero word has pair weight 21 against 24 for "
              "the cyclic layout",
              [] {
                  const FieldPtr E = make_field(3, 3, {1, 2, 0, 1});
                  const LinearCode var = variation_simplex(E);
                  const LinearCode cyc = cyclic_simplex(E);
                  for (std::uint64_t a = 1; a < 27; ++a) {
                      check(b_weight(var.codeword_at(a), 2) == 21,
                            "variation word " + std::to_string(a) + " has the wrong pair weight");
                      check(b_weight(cyc.codeword_at(a), 2) == 24,
                            "cyclic word " + std::to_string(a) + " has the wrong pair weight");
                  }
                  check(variation_simplex_pair_weight({3, 3}) == 21, "variation closed form");
                  check(cyclic_simplex_b_weight({3, 3}, 2) == 24, "cyclic closed form");
                  // frozen words for message (0,1,0)
                  const std::vector<int> cg = {0, 2, 0, 2, 1, 2, 2, 1, 0, 2, 2, 2, 0,
                                               0, 1, 0, 1, 2, 1, 1, 2, 0, 1, 1, 1, 0};
                  const std::vector<int> vg = {0, 0, 2, 1, 0, 0, 2, 1, 1, 2, 2, 1, 2,
                                               1, 1, 2, 0, 0, 2, 1, 2, 1, 2, 1, 0, 0};
                  const Codeword cw = cyc.codeword_at(3), vw = var.codeword_at(3);
                  for (int i = 0; i < 26; ++i) {
                      const auto t = static_cast<std::size_t>(i);
                      check(cw[t].idx == static_cast<std::uint32_t>(cg[t]),
                            "frozen cyclic word differs at position " + std::to_string(i));
                      check(vw[t].idx == static_cast<std::uint32_t>(vg[t]),
                            "frozen variation word differs at position " + std::to_string(i));
                  }
              });

    criterion("width-3 and width-5 windows of the variation layout match the closed forms "
              "(GF(27) and GF(25))",
              [] {
                  const FieldPtr E27 = make_field(3, 3, {1, 2, 0, 1});
                  const LinearCode v27 = variation_simplex(E27);
                  check(variation_simplex_odd_b_weight({3, 3}, 1) == 24, "odd-window closed form");
                  check(variation_simplex_p_weight({3, 3}) == 24, "width-p closed form");
                  for (std::uint64_t a = 1; a < 27; ++a)
                      check(b_weight(v27.codeword_at(a), 3) == 24,
                            "GF(27) word " + std::to_string(a) + " has the wrong width-3 weight");
                  const FieldPtr E25 = make_field(5, 2, {1, 1, 1});
                  const LinearCode v25 = variation_simplex(E25);
                  check(variation_simplex_p_weight({5, 2}) == 24, "width-5 closed form");
                  check(variation_simplex_pair_weight({5, 2}) == 21, "pair closed form over GF(25)");
                  for (std::uint64_t a = 1; a < 25; ++a) {
                      check(b_weight(v25.codeword_at(a), 5) == 24,
                            "GF(25) word " + std::to_string(a) + " has the wrong width-5 weight");
                      check(b_weight(v25.codeword_at(a), 2) == 21,
                            "GF(25) word " + std::to_string(a) + " has the wrong pair weight");
                  }
              });

    criterion("minimum pair distance meets n-k+2 for k >= 2 and equals n for k = 1 (grid from "
              "criterion 4)",
              [] {
                  check(!grid_cache.empty(), "criterion 4 left no grid to check");
                  for (const GridPoint& g : grid_cache) {
                      if (g.k >= 2) {
                          check(g.d2 == g.n - g.k + 2, "pair distance misses the bound" + at(g.q, g.n, g.k));
                      } else {
                          // k = 1: every nonzero word is full weight, so d2 = n,
                          // strictly inside the bound n+1
                          check(g.d2 == g.n, "pair distance should be n" + at(g.q, g.n, g.k));
                          check(g.d2 <= g.n - g.k + 2, "bound violated" + at(g.q, g.n, g.k));
                      }
                  }
              });

    criterion("window metric properties hold on random words (9 fields x 10^4 words) and "
              "shortening keeps codes MDS",
              [] {
                  const std::vector<std::pair<int, int>> pms = {{2, 1}, {3, 1}, {5, 1}, {2, 2}, {3, 2},
                                                                {2, 3}, {3, 3}, {5, 2}, {2, 4}};
                  for (const auto& [p, m] : pms) {
                      const FieldPtr F = make_field(p, m);
                      auto rng = oracle::seeded_rng(F->size());
                      for (int rep = 0; rep < 10000; ++rep) {
                          const int n = 2 + static_cast<int>(rng() % 15);
                          const Codeword x = oracle::random_word(*F, n, rng);
                          const std::vector<int> w = b_weights_up_to(x, n);
                          const int w1 = w[1];
                          check(w1 == hamming_weight(x), "w_1 is not the Hamming weight");
                          const int rb = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
                          check(w[static_cast<std::size_t>(rb)] == b_weight(x, rb),
                                "batch weights disagree with the window scan");
                          for (int b = 1; b < n; ++b)
                              check(w[static_cast<std::size_t>(b)] <= w[static_cast<std::size_t>(b + 1)],
                                    "weights must grow with the window");
                          if (w1 == 0) {
                              check(w[2] == 0, "zero word must have zero pair weight");
                          } else if (w1 == n) {
                              check(w[2] == n, "full word must have full pair weight");
                          } else {
                              check(w1 + 1 <= w[2] && w[2] <= std::min(2 * w1, n),
                                    "pair weight outside the sandwich");
                          }
                          Codeword rot(x.size());
                          const int s = static_cast<int>(rng() % static_cast<unsigned>(n));
                          for (int i = 0; i < n; ++i)
                              rot[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>((i + s) % n)];
                          check(b_weight(rot, rb) == w[static_cast<std::size_t>(rb)],
                                "weights must be shift invariant");
                      }
                  }
                  const FieldPtr F27 = make_field(3, 3, {1, 2, 0, 1});
                  const LinearCode s27 = shorten(rs_code(F27, consecutive_powers(*F27, 5), 4), {3, 4});
                  check(min_b_distance(s27, 1) == 2 && min_b_distance(s27, 2) == 3,
                        "shortened [5,4] code over GF(27) lost its distances");
                  const FieldPtr F8 = make_field(2, 3, {1, 0, 1, 1});
                  const LinearCode s8 = shorten(rs_code(F8, consecutive_powers(*F8, 4), 3), {3});
                  check(min_b_distance(s8, 1) == 2 && min_b_distance(s8, 2) == 3,
                        "shortened [4,3] code over GF(8) lost its distances");
              });

    criterion("CLI verification reports are byte-identical for 1 and 8 workers", [] {
        const auto run = [](std::vector<std::string> args) {
            std::ostringstream out, err;
            const int rc = run_cli(std::move(args), out, err);
            check(rc == 0, "CLI exited with " + std::to_string(rc) + ": " + err.str());
            return out.str();
        };
        const std::vector<std::vector<std::string>> commands = {
            {"dist", "--rs", "--q", "8", "--mod", "1,0,1,1", "--points", "powers:4", "--k", "3",
             "--b", "2", "--source", "both", "--format", "json"},
            {"dist", "--rs", "--q", "27", "--mod", "1,2,0,1", "--points", "powers:5", "--k", "4",
             "--b", "2", "--source", "both", "--format", "json"},
        };
        for (const auto& base : commands) {
            auto one = base, eight = base;
            one.insert(one.end(), {"--workers", "1"});
            eight.insert(eight.end(), {"--workers", "8"});
            const std::string a = run(one), b = run(eight);
            check(!a.empty() && a == b, "outputs differ between worker counts");
        }
    });

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
