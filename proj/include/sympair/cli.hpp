#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "closed_form.hpp"
#include "codes.hpp"
#include "error.hpp"
#include "field.hpp"
#include "metrics.hpp"
#include "report.hpp"
#include "simplex_theory.hpp"

namespace sympair {

namespace detail {

inline std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            fail(errc::parse_error, "bad integer '" + tok + "' in list '" + s + "'");
        }
    }
    if (out.empty()) fail(errc::parse_error, "empty integer list");
    return out;
}

// "a..b" or a single "a".
inline std::pair<int, int> parse_range(const std::string& s) {
    const std::size_t dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            const int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
    } catch (const std::exception&) {
        fail(errc::parse_error, "bad range '" + s + "' (expected N or LO..HI)");
    }
}

// "powers:N" for the first N powers of g, otherwise semicolon-separated
// coefficient vectors.
inline std::vector<FieldElement> parse_points(const Field& F, const std::string& s) {
    if (s.rfind("powers:", 0) == 0) {
        int n = 0;
        try {
            n = std::stoi(s.substr(7));
        } catch (const std::exception&) {
            fail(errc::parse_error, "bad point count in '" + s + "'");
        }
        if (n < 1) fail(errc::parse_error, "point count must be at least 1");
        return consecutive_powers(F, n);
    }
    std::vector<FieldElement> pts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ';')) pts.push_back(F.parse_element(tok));
    if (pts.empty()) fail(errc::parse_error, "empty point list");
    return pts;
}

// q must be p^m for a single prime p.
inline std::pair<int, int> factor_prime_power(std::uint64_t q) {
    if (q < 2) fail(errc::not_prime, "alphabet size must be at least 2");
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) { p = d; break; }
    if (p == 0) return {static_cast<int>(q), 1};
    int m = 0;
    while (q % p == 0) { q /= p; ++m; }
    if (q != 1) fail(errc::not_prime, "alphabet size is not a prime power");
    return {static_cast<int>(p), m};
}

} // namespace detail

struct CliOptions {
    // field construction
    int p = 0;
    int m = 0;
    std::uint64_t q = 0;
    std::string mod;
    std::string field_literal;

    // code construction
    std::string kind = "rs";
    bool rs_flag = false;
    int k = 0;
    std::string points;
    std::string shorten;
    std::string code_path;
    std::string export_path;

    // measurement
    int b = 2;
    std::string b_range;
    std::string family;
    std::string source = "brute_force";
    std::uint64_t guard = default_enumeration_guard;
    int workers = 1;
    bool plain_enumeration = false;

    // sweep
    std::string q_list;
    std::string n_range;
    std::string k_range = "1..n";

    // output
    std::string format = "table";
    std::string out_path;
};

namespace detail {

inline FieldPtr field_from_options(const CliOptions& opt) {
    if (!opt.field_literal.empty()) {
        if (opt.p || opt.m || opt.q || !opt.mod.empty())
            fail(errc::parse_error, "--field excludes --p/--m/--q/--mod");
        return parse_field(opt.field_literal);
    }
    int p = opt.p, m = opt.m;
    if (opt.q) {
        if (p || m) fail(errc::parse_error, "--q excludes --p/--m");
        std::tie(p, m) = factor_prime_power(opt.q);
    }
    if (p == 0 || m == 0) fail(errc::parse_error, "need --field, --q, or both --p and --m");
    if (!opt.mod.empty()) return make_field(p, m, parse_int_list(opt.mod));
    return make_field(p, m);
}

inline EnumOptions enum_options(const CliOptions& opt) {
    if (opt.guard > cli_guard_cap)
        fail(errc::parse_error, "guard exceeds the hard cap 2^28");
    if (opt.workers < 1 || opt.workers > 256)
        fail(errc::parse_error, "workers must be between 1 and 256");
    EnumOptions eo;
    eo.guard = opt.guard;
    eo.workers = opt.workers;
    eo.scalar_classes = !opt.plain_enumeration;
    return eo;
}

inline json code_to_json(const LinearCode& code) {
    json j;
    j["kind"] = std::string(to_string(code.kind()));
    j["field"] = code.field().to_string();
    j["n"] = code.length();
    j["k"] = code.dimension();
    if (code.construction_field()) j["construction_field"] = code.construction_field()->to_string();
    if (!code.points().empty()) {
        j["points"] = json::array();
        for (FieldElement e : code.points()) j["points"].push_back(code.field().element_string(e));
    }
    if (!code.shortened_at().empty()) j["shortened_at"] = code.shortened_at();
    j["generator"] = json::array();
    for (int r = 0; r < code.dimension(); ++r) {
        json row = json::array();
        for (int c = 0; c < code.length(); ++c) row.push_back(code.field().element_string(code.generator_at(r, c)));
        j["generator"].push_back(row);
    }
    return j;
}

inline LinearCode code_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) fail(errc::parse_error, "code file must be an object with a kind");
    const std::string kind = j["kind"].get<std::string>();
    auto field_of = [&](const char* key) {
        if (!j.contains(key)) fail(errc::parse_error, std::string("code file misses '") + key + "'");
        return parse_field(j[key].get<std::string>());
    };
    std::optional<LinearCode> code;
    if (kind == "rs") {
        FieldPtr F = field_of("field");
        if (!j.contains("points") || !j.contains("k")) fail(errc::parse_error, "rs code needs points and k");
        std::vector<FieldElement> pts;
        for (const auto& e : j["points"]) pts.push_back(F->parse_element(e.get<std::string>()));
        code = rs_code(F, std::move(pts), j["k"].get<int>());
    } else if (kind == "cyclic_simplex" || kind == "standard_simplex" || kind == "variation_simplex") {
        FieldPtr E = field_of(j.contains("construction_field") ? "construction_field" : "field");
        code = make_simplex(E, kind == "cyclic_simplex"    ? SimplexFamily::cyclic
                               : kind == "standard_simplex" ? SimplexFamily::standard
                                                            : SimplexFamily::variation);
    } else if (kind == "raw" || kind == "shortened") {
        // A shortened code round-trips through its explicit generator matrix.
        FieldPtr F = field_of("field");
        if (!j.contains("n") || !j.contains("k") || !j.contains("generator"))
            fail(errc::parse_error, "raw code needs n, k and generator");
        const int n = j["n"].get<int>();
        const int k = j["k"].get<int>();
        std::vector<FieldElement> gen;
        for (const auto& row : j["generator"])
            for (const auto& e : row) gen.push_back(F->parse_element(e.get<std::string>()));
        code = raw_code(F, n, k, std::move(gen));
    } else {
        fail(errc::parse_error, "unknown code kind '" + kind + "'");
    }
    if (j.contains("shorten")) {
        std::vector<int> T;
        for (const auto& t : j["shorten"]) T.push_back(t.get<int>());
        code = shorten(*code, std::move(T));
    }
    return *code;
}

inline LinearCode code_from_options(const CliOptions& opt) {
    if (!opt.code_path.empty()) {
        if (!opt.field_literal.empty() || opt.p || opt.m || !opt.points.empty() || opt.k)
            fail(errc::parse_error, "--code excludes inline construction flags");
        std::ifstream in(opt.code_path);
        if (!in) fail(errc::parse_error, "cannot open code file '" + opt.code_path + "'");
        json j;
        try {
            in >> j;
        } catch (const std::exception& ex) {
            fail(errc::parse_error, std::string("bad code file: ") + ex.what());
        }
        return code_from_json(j);
    }
    FieldPtr F = field_from_options(opt);
    std::optional<LinearCode> code;
    if (opt.kind == "rs") {
        if (opt.points.empty() || opt.k == 0) fail(errc::parse_error, "rs code needs --points and --k");
        code = rs_code(F, parse_points(*F, opt.points), opt.k);
    } else if (opt.kind == "cyclic_simplex" || opt.kind == "standard_simplex" || opt.kind == "variation_simplex") {
        if (!opt.points.empty() || opt.k != 0)
            fail(errc::parse_error, "--points/--k apply to rs codes only");
        code = make_simplex(F, parse_simplex_family(opt.kind.substr(0, opt.kind.find('_'))));
    } else {
        fail(errc::parse_error, "unknown code kind '" + opt.kind + "'");
    }
    if (!opt.shorten.empty()) code = shorten(*code, parse_int_list(opt.shorten));
    return *code;
}

inline void write_output(const CliOptions& opt, std::ostream& out, const std::string& text) {
    if (opt.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(opt.out_path, std::ios::binary);
    if (!f) fail(errc::parse_error, "cannot open output file '" + opt.out_path + "'");
    f << text;
}

} // namespace detail

inline int cmd_field(const CliOptions& opt, std::ostream& out) {
    const FieldPtr F = detail::field_from_options(opt);
    detail::write_output(opt, out, render(field_report(*F), parse_format(opt.format)));
    return 0;
}

inline int cmd_dist(const CliOptions& opt, std::ostream& out) {
    const LinearCode code = detail::code_from_options(opt);
    if (!opt.export_path.empty()) {
        std::ofstream f(opt.export_path, std::ios::binary);
        if (!f) fail(errc::parse_error, "cannot open export file '" + opt.export_path + "'");
        f << detail::code_to_json(code).dump(2) << "\n";
    }
    const Format fmt = parse_format(opt.format);
    const EnumOptions eo = detail::enum_options(opt);

    if (opt.source == "brute_force") {
        detail::write_output(opt, out, render(b_weight_distribution(code, opt.b, eo), fmt));
        return 0;
    }
    if (opt.source == "formula") {
        const MdsParams P = mds_params_of(code);
        if (opt.b == 1) {
            detail::write_output(opt, out, render(mds_hamming_distribution(P), fmt));
        } else if (opt.b == 2) {
            detail::write_output(opt, out, render(mds_pair_distribution(P), fmt));
        } else {
            fail(errc::formula_unavailable, "closed forms cover b = 1 and b = 2 only");
        }
        return 0;
    }
    if (opt.source == "both") {
        TheoremReport rep;
        if (opt.b == 2) {
            rep = verify_mds_pair_distribution(code, eo);
        } else if (opt.b == 1) {
            rep.code = code.describe();
            rep.params = mds_params_of(code);
            rep.formula = mds_hamming_distribution(rep.params);
            rep.brute = b_weight_distribution(code, 1, eo);
            for (int w = 0; w <= code.length(); ++w)
                if (rep.formula.counts[static_cast<std::size_t>(w)] != rep.brute.counts[static_cast<std::size_t>(w)])
                    rep.mismatches.push_back(w);
            rep.match = rep.mismatches.empty();
        } else {
            fail(errc::formula_unavailable, "closed forms cover b = 1 and b = 2 only");
        }
        detail::write_output(opt, out, render(rep, fmt));
        return rep.match ? 0 : 1;
    }
    fail(errc::parse_error, "unknown source '" + opt.source + "'");
}

inline int cmd_simplex(const CliOptions& opt, std::ostream& out) {
    const FieldPtr E = detail::field_from_options(opt);
    const SimplexFamily fam = parse_simplex_family(opt.family);
    const SimplexParams P{E->characteristic(), E->degree()};
    const LinearCode code = make_simplex(E, fam);

    int b_lo = 1, b_hi = std::min(code.length(), E->degree() + 1);
    if (!opt.b_range.empty()) std::tie(b_lo, b_hi) = detail::parse_range(opt.b_range);
    const Format fmt = parse_format(opt.format);

    if (opt.source == "formula") {
        // Formula values only; this never enumerates, so it reaches any size.
        SimplexReport rep;
        rep.family = fam;
        rep.params = P;
        rep.field = E->to_string();
        rep.n = code.length();
        rep.k = code.dimension();
        for (int b = b_lo; b <= b_hi; ++b) {
            SimplexCheck c;
            c.b = b;
            c.formula = simplex_b_weight_formula(P, fam, b, &c.formula_source);
            c.verdict = c.formula ? "FORMULA" : "EMPIRICAL";
            rep.checks.push_back(std::move(c));
        }
        detail::write_output(opt, out, render(rep, fmt));
        return 0;
    }
    if (opt.source != "both" && opt.source != "brute_force")
        fail(errc::parse_error, "unknown source '" + opt.source + "'");
    SimplexReport rep = verify_simplex(E, fam, b_lo, b_hi, detail::enum_options(opt));
    if (opt.source == "brute_force")
        for (SimplexCheck& c : rep.checks) {
            c.formula.reset();
            c.formula_source.clear();
            c.verdict = "EMPIRICAL";
        }
    detail::write_output(opt, out, render(rep, fmt));
    return rep.all_match ? 0 : 1;
}

// Pure-formula grid check, no enumeration and no guard: at every (q, n, k)
// the counts must sum to q^k, and on n <= q+1 (where codes meeting the
// Singleton bound actually exist) they must also be nonnegative.  Beyond that
// length the formula is an extrapolation with no code behind it and does go
// negative (first at q=2, n=8, k=3), so negativity there is reported per row
// but does not fail the sweep.
inline int cmd_sweep(const CliOptions& opt, std::ostream& out) {
    if (opt.q_list.empty() || opt.n_range.empty())
        fail(errc::parse_error, "sweep needs --q and --n");
    const std::vector<int> qs = detail::parse_int_list(opt.q_list);
    const auto [n_lo, n_hi] = detail::parse_range(opt.n_range);
    const bool k_all = opt.k_range == "1..n";
    int k_lo = 1, k_hi = 0;
    if (!k_all) std::tie(k_lo, k_hi) = detail::parse_range(opt.k_range);
    const Format fmt = parse_format(opt.format);

    std::uint64_t points = 0;
    for (int q : qs) {
        detail::factor_prime_power(static_cast<std::uint64_t>(q)); // validates prime power
        for (int n = std::max(2, n_lo); n <= n_hi; ++n)
            points += static_cast<std::uint64_t>(std::max(0, (k_all ? n : std::min(k_hi, n)) - k_lo + 1));
    }

    json rows = json::array();
    std::vector<std::vector<std::string>> table_rows;
    table_rows.push_back({"q", "n", "k", "normalized", "nonnegative", "verdict"});
    bool all_pass = true;
    std::uint64_t checked = 0;
    std::optional<WeightDistribution> single; // echoed in full when the grid is one point
    for (int q : qs) {
        for (int n = std::max(2, n_lo); n <= n_hi; ++n) {
            const int kh = k_all ? n : std::min(k_hi, n);
            for (int k = k_lo; k <= kh; ++k) {
                const MdsParams P{n, k, static_cast<std::uint64_t>(q)};
                const WeightDistribution dist = mds_pair_distribution(P);
                const bool normalized = dist.total() == bigint_pow(P.q, static_cast<unsigned long>(k));
                bool nonnegative = true;
                for (const bigint& c : dist.counts) nonnegative = nonnegative && c >= 0;
                const bool in_code_range = n <= q + 1;
                const bool pass = normalized && (nonnegative || !in_code_range);
                all_pass = all_pass && pass;
                ++checked;
                json row;
                row["q"] = q;
                row["n"] = n;
                row["k"] = k;
                row["normalized"] = normalized;
                row["nonnegative"] = nonnegative;
                row["code_exists"] = in_code_range;
                row["verdict"] = pass ? "OK" : "FAIL";
                if (points == 1) {
                    row["counts"] = json::array();
                    for (const bigint& c : dist.counts) row["counts"].push_back(to_decimal(c));
                    single = dist;
                }
                rows.push_back(std::move(row));
                table_rows.push_back({std::to_string(q), std::to_string(n), std::to_string(k),
                                      normalized ? "yes" : "NO", nonnegative ? "yes" : "no",
                                      pass ? "OK" : "FAIL"});
            }
        }
    }

    std::string text;
    if (fmt == Format::json) {
        json j;
        j["points"] = rows;
        j["checked"] = checked;
        j["verdict"] = all_pass ? "OK" : "FAIL";
        text = detail::dump(j);
    } else if (fmt == Format::table) {
        std::ostringstream os;
        os << detail::table(table_rows);
        if (single) os << "\n" << render(*single, Format::table);
        os << "checked: " << checked << "\nverdict: " << (all_pass ? "OK" : "FAIL") << "\n";
        text = os.str();
    } else {
        std::ostringstream os;
        os << detail::csv_line({"q", "n", "k", "normalized", "nonnegative", "verdict"});
        for (std::size_t i = 1; i < table_rows.size(); ++i) os << detail::csv_line(table_rows[i]);
        text = os.str();
    }
    detail::write_output(opt, out, text);
    return all_pass ? 0 : 1;
}

// Exit codes: 0 success (and every verification MATCH), 1 verification
// mismatch, 2 usage or domain error.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"weight distributions of linear codes under b-symbol metrics"};
    app.require_subcommand(1);
    CliOptions opt;

    auto add_field_opts = [&](CLI::App* cmd) {
        cmd->add_option("--p", opt.p, "field characteristic (prime)");
        cmd->add_option("--m", opt.m, "extension degree");
        cmd->add_option("--q", opt.q, "field size p^m (alternative to --p/--m)");
        cmd->add_option("--mod", opt.mod, "modulus c0,c1,...,cm (little-endian, monic; reduced mod p)");
        cmd->add_option("--field", opt.field_literal, "field literal GF(p^m; c0,...,cm; g=...)");
    };
    auto add_output_opts = [&](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "output format: json, table or csv")->default_str("table");
        cmd->add_option("--out", opt.out_path, "write the report to a file instead of stdout");
    };
    auto add_enum_opts = [&](CLI::App* cmd) {
        cmd->add_option("--guard", opt.guard, "refuse enumerations with q^k beyond this (cap 2^28)");
        cmd->add_option("--workers", opt.workers, "worker threads for enumeration");
        cmd->add_flag("--plain-enumeration", opt.plain_enumeration,
                      "enumerate every message instead of one per scalar class");
    };

    CLI::App* c_field = app.add_subcommand("field", "print a field with its power and trace tables");
    add_field_opts(c_field);
    add_output_opts(c_field);

    CLI::App* c_dist = app.add_subcommand("dist", "weight distribution of one code");
    add_field_opts(c_dist);
    c_dist->add_option("--kind", opt.kind, "rs, cyclic_simplex, standard_simplex or variation_simplex");
    c_dist->add_flag("--rs", opt.rs_flag, "shorthand for --kind rs");
    c_dist->add_option("--k", opt.k, "dimension (rs)");
    c_dist->add_option("--points", opt.points, "powers:N or e1;e2;...;eN (rs)");
    c_dist->add_option("--shorten", opt.shorten, "coordinate positions to shorten at, comma separated");
    c_dist->add_option("--code", opt.code_path, "load the code from a JSON description file");
    c_dist->add_option("--export-code", opt.export_path, "also write the code description to this file");
    c_dist->add_option("--b", opt.b, "window width");
    c_dist->add_option("--source", opt.source, "brute_force, formula or both");
    add_enum_opts(c_dist);
    add_output_opts(c_dist);

    CLI::App* c_simplex = app.add_subcommand("simplex", "closed forms versus enumeration for simplex layouts");
    add_field_opts(c_simplex);
    c_simplex->add_option("--family", opt.family, "cyclic, standard or variation")->required();
    c_simplex->add_option("--b", opt.b_range, "window range LO..HI (default 1..min(n, m+1))");
    c_simplex->add_option("--source", opt.source, "both (default), brute_force or formula")->default_str("both");
    add_enum_opts(c_simplex);
    add_output_opts(c_simplex);

    CLI::App* c_sweep = app.add_subcommand("sweep", "formula-only consistency checks over a parameter grid");
    c_sweep->add_option("--q", opt.q_list, "alphabet sizes, comma separated prime powers")->required();
    c_sweep->add_option("--n", opt.n_range, "length range LO..HI (lengths below 2 are skipped)")->required();
    c_sweep->add_option("--k", opt.k_range, "dimension range LO..HI (default 1..n)");
    add_output_opts(c_sweep);

    std::vector<const char*> argv;
    argv.push_back("sympair");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    // "both" fits the simplex verify flow better than the dist default.
    if (*c_simplex && !c_simplex->count("--source")) opt.source = "both";
    if (opt.rs_flag && c_dist->count("--kind") && opt.kind != "rs") {
        err << "error: --rs contradicts --kind " << opt.kind << "\n";
        return 2;
    }

    try {
        if (*c_field) return cmd_field(opt, out);
        if (*c_dist) return cmd_dist(opt, out);
        if (*c_simplex) return cmd_simplex(opt, out);
        if (*c_sweep) return cmd_sweep(opt, out);
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace sympair
