#pragma once

#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bigint.hpp"
#include "closed_form.hpp"
#include "error.hpp"
#include "field.hpp"
#include "metrics.hpp"
#include "simplex_theory.hpp"

namespace sympair {

enum class Format { json, table, csv };

inline Format parse_format(std::string_view s) {
    if (s == "json") return Format::json;
    if (s == "table") return Format::table;
    if (s == "csv") return Format::csv;
    fail(errc::parse_error, "unknown format '" + std::string(s) + "' (expected json, table or csv)");
}

// Serialized with insertion order preserved and counts as decimal strings;
// between that and the deterministic enumeration, output bytes are
// reproducible for any worker count.
using json = nlohmann::ordered_json;

inline json to_json(const WeightDistribution& d) {
    json j;
    j["metric_b"] = d.b;
    j["n"] = d.n;
    j["source"] = std::string(to_string(d.source));
    j["counts"] = to_decimal(d.counts);
    return j;
}

inline json to_json(const MdsParams& p) {
    json j;
    j["n"] = p.n;
    j["k"] = p.k;
    j["q"] = p.q;
    j["d"] = p.d();
    return j;
}

inline json to_json(const TheoremReport& r) {
    json j;
    j["code"] = r.code;
    j["params"] = to_json(r.params);
    j["formula"] = to_json(r.formula);
    j["brute_force"] = to_json(r.brute);
    j["mismatches"] = r.mismatches;
    j["verdict"] = r.match ? "MATCH" : "MISMATCH";
    return j;
}

inline json to_json(const PairSingletonReport& r) {
    json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["d2"] = r.d2;
    j["bound"] = r.bound;
    j["meets_bound"] = r.meets_bound;
    j["within_bound"] = r.within_bound;
    return j;
}

inline json to_json(const SimplexCheck& c) {
    json j;
    j["b"] = c.b;
    if (c.formula) {
        j["formula"] = to_decimal(*c.formula);
        j["source"] = c.formula_source;
    } else {
        j["formula"] = nullptr;
        j["source"] = "";
    }
    json obs = json::object();
    for (const auto& [w, count] : c.observed) obs[std::to_string(w)] = to_decimal(count);
    j["observed"] = obs;
    j["one_weight"] = c.one_weight;
    j["verdict"] = c.verdict;
    return j;
}

inline json to_json(const SimplexReport& r) {
    json j;
    j["family"] = std::string(to_string(r.family));
    j["field"] = r.field;
    j["p"] = r.params.p;
    j["m"] = r.params.m;
    j["q"] = to_decimal(r.params.q());
    j["h"] = to_decimal(r.params.h());
    j["n"] = r.n;
    j["k"] = r.k;
    j["checks"] = json::array();
    for (const SimplexCheck& c : r.checks) j["checks"].push_back(to_json(c));
    j["verdict"] = r.all_match ? "MATCH" : "MISMATCH";
    return j;
}

// Power and trace tables of one field.
struct FieldReport {
    std::string field;
    int p = 0;
    int m = 0;
    std::uint64_t q = 0;
    std::vector<int> modulus;
    std::string generator;
    struct Row {
        std::uint64_t i;
        std::string element;
        int trace;
    };
    std::vector<Row> powers;
};

inline FieldReport field_report(const Field& F) {
    FieldReport r;
    r.field = F.to_string();
    r.p = F.characteristic();
    r.m = F.degree();
    r.q = F.size();
    r.modulus = F.modulus();
    r.generator = F.element_string(F.generator());
    r.powers.reserve(F.size() - 1);
    for (std::uint64_t i = 0; i + 1 < F.size(); ++i) {
        const FieldElement e = F.exp(i);
        r.powers.push_back({i, F.element_string(e), F.trace(e)});
    }
    return r;
}

inline json to_json(const FieldReport& r) {
    json j;
    j["field"] = r.field;
    j["p"] = r.p;
    j["m"] = r.m;
    j["q"] = r.q;
    j["modulus"] = r.modulus;
    j["generator"] = r.generator;
    j["powers"] = json::array();
    for (const FieldReport::Row& row : r.powers) {
        json e;
        e["i"] = row.i;
        e["element"] = row.element;
        e["trace"] = row.trace;
        j["powers"].push_back(e);
    }
    return j;
}

namespace detail {

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

inline std::string table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::ostringstream os;
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "  " : "");
            os << (c + 1 == row.size() ? row[c] : pad(row[c], width[c]));
        }
        os << "\n";
    }
    return os.str();
}

inline std::string csv_line(const std::vector<std::string>& cells) {
    std::ostringstream os;
    for (std::size_t c = 0; c < cells.size(); ++c) os << (c ? "," : "") << cells[c];
    os << "\n";
    return os.str();
}

inline std::string observed_cell(const std::map<int, bigint>& obs) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, count] : obs) {
        os << (first ? "" : " ") << w << "x" << to_decimal(count);
        first = false;
    }
    return os.str();
}

} // namespace detail

inline std::string render(const WeightDistribution& d, Format f) {
    switch (f) {
    case Format::json: return detail::dump(to_json(d));
    case Format::table: {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"w", "count"});
        for (int w = 0; w <= d.n; ++w)
            rows.push_back({std::to_string(w), to_decimal(d.counts[static_cast<std::size_t>(w)])});
        std::ostringstream os;
        os << "b=" << d.b << " n=" << d.n << " source=" << to_string(d.source)
           << " total=" << to_decimal(d.total()) << "\n"
           << detail::table(rows);
        return os.str();
    }
    case Format::csv: {
        std::ostringstream os;
        os << detail::csv_line({"w", "count", "source"});
        for (int w = 0; w <= d.n; ++w)
            os << detail::csv_line({std::to_string(w), to_decimal(d.counts[static_cast<std::size_t>(w)]),
                                    std::string(to_string(d.source))});
        return os.str();
    }
    }
    fail(errc::parse_error, "unknown format");
}

inline std::string render(const TheoremReport& r, Format f) {
    switch (f) {
    case Format::json: return detail::dump(to_json(r));
    case Format::table: {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"w", "formula", "brute_force"});
        for (int w = 0; w <= r.params.n; ++w)
            rows.push_back({std::to_string(w), to_decimal(r.formula.counts[static_cast<std::size_t>(w)]),
                            to_decimal(r.brute.counts[static_cast<std::size_t>(w)])});
        std::ostringstream os;
        os << r.code << "\n" << detail::table(rows) << "verdict: " << (r.match ? "MATCH" : "MISMATCH") << "\n";
        return os.str();
    }
    case Format::csv: {
        std::ostringstream os;
        os << detail::csv_line({"w", "formula", "brute_force"});
        for (int w = 0; w <= r.params.n; ++w)
            os << detail::csv_line({std::to_string(w), to_decimal(r.formula.counts[static_cast<std::size_t>(w)]),
                                    to_decimal(r.brute.counts[static_cast<std::size_t>(w)])});
        return os.str();
    }
    }
    fail(errc::parse_error, "unknown format");
}

inline std::string render(const SimplexReport& r, Format f) {
    switch (f) {
    case Format::json: return detail::dump(to_json(r));
    case Format::table: {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"b", "formula", "source", "observed", "verdict"});
        for (const SimplexCheck& c : r.checks)
            rows.push_back({std::to_string(c.b), c.formula ? to_decimal(*c.formula) : "-",
                            c.formula_source.empty() ? "-" : c.formula_source, detail::observed_cell(c.observed),
                            c.verdict});
        std::ostringstream os;
        os << to_string(r.family) << " simplex of " << r.field << "  [n=" << r.n << ",k=" << r.k << "]\n"
           << detail::table(rows) << "verdict: " << (r.all_match ? "MATCH" : "MISMATCH") << "\n";
        return os.str();
    }
    case Format::csv: {
        std::ostringstream os;
        os << detail::csv_line({"b", "formula", "source", "observed", "verdict"});
        for (const SimplexCheck& c : r.checks)
            os << detail::csv_line({std::to_string(c.b), c.formula ? to_decimal(*c.formula) : "",
                                    c.formula_source, detail::observed_cell(c.observed), c.verdict});
        return os.str();
    }
    }
    fail(errc::parse_error, "unknown format");
}

inline std::string render(const PairSingletonReport& r, Format f) {
    switch (f) {
    case Format::json: return detail::dump(to_json(r));
    case Format::table: {
        std::ostringstream os;
        os << "n=" << r.n << " k=" << r.k << " d2=" << r.d2 << " bound=" << r.bound
           << (r.meets_bound ? " (meets the pair bound)" : r.within_bound ? " (within the pair bound)"
                                                                          : " (EXCEEDS the pair bound)")
           << "\n";
        return os.str();
    }
    case Format::csv: {
        std::ostringstream os;
        os << detail::csv_line({"n", "k", "d2", "bound", "meets_bound"});
        os << detail::csv_line({std::to_string(r.n), std::to_string(r.k), std::to_string(r.d2),
                                std::to_string(r.bound), r.meets_bound ? "true" : "false"});
        return os.str();
    }
    }
    fail(errc::parse_error, "unknown format");
}

inline std::string render(const FieldReport& r, Format f) {
    switch (f) {
    case Format::json: return detail::dump(to_json(r));
    case Format::table: {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"i", "g^i", "trace"});
        for (const FieldReport::Row& row : r.powers)
            rows.push_back({std::to_string(row.i), row.element, std::to_string(row.trace)});
        std::ostringstream os;
        os << r.field << "\n" << detail::table(rows);
        return os.str();
    }
    case Format::csv: {
        std::ostringstream os;
        os << detail::csv_line({"i", "element", "trace"});
        for (const FieldReport::Row& row : r.powers)
            os << detail::csv_line({std::to_string(row.i), row.element, std::to_string(row.trace)});
        return os.str();
    }
    }
    fail(errc::parse_error, "unknown format");
}

} // namespace sympair
